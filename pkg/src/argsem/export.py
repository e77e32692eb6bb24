"""Graph exports: deterministic DOT text and matplotlib figure rendering.

Node labels stack id, claim, and value. Fill colours come from a fixed
palette in declared-value order. Present edges are solid; edges that appear
as open Present branches of an unresolved constraint are dashed; Absent edges
are omitted.
"""

from __future__ import annotations

import math

from .formula import render_formula
from .framework import AttackStatus, Framework
from .saf import ClosureTrace

PALETTE = (
    "#ffffff",
    "#d3d3d3",
    "#aec6cf",
    "#ffb347",
    "#b39eb5",
    "#77dd77",
    "#f4bfbf",
    "#fdfd96",
)
FACT_COLOR = "#f5deb3"


def _value_colors(fw: Framework) -> dict[str, str]:
    colors = {}
    for i, value in enumerate(fw.declared_values):
        colors[value] = PALETTE[i % len(PALETTE)]
    if fw.fact_value is not None:
        colors[fw.fact_value] = FACT_COLOR
    return colors


def _node_label(fw: Framework, arg: str) -> str:
    parts = [arg]
    if arg in fw.claims:
        parts.append(render_formula(fw.claims[arg]))
    if arg in fw.values:
        parts.append(fw.values[arg])
    return "\\n".join(parts)


def constraint_edges(trace: ClosureTrace | None) -> set[tuple[str, str]]:
    """Present-branch edges of unresolved constraints; rendered dashed."""
    if trace is None:
        return set()
    out: set[tuple[str, str]] = set()
    for constraint in trace.open_constraints():
        for literal in constraint.literals:
            if literal.status is AttackStatus.PRESENT:
                out.update(literal.edges)
    return out


def export_dot(fw: Framework, trace: ClosureTrace | None = None) -> str:
    dashed = constraint_edges(trace)
    colors = _value_colors(fw)
    lines = ["digraph framework {", "  rankdir=LR;", '  node [shape=ellipse, style=filled, fillcolor="#ffffff"];']
    for arg in fw.arguments:
        attrs = [f'label="{_node_label(fw, arg)}"']
        value = fw.values.get(arg)
        if value is not None:
            attrs.append(f'fillcolor="{colors[value]}"')
        lines.append(f'  "{arg}" [{", ".join(attrs)}];')
    for a, b in fw.present_attacks():
        lines.append(f'  "{a}" -> "{b}";')
    index = {a: i for i, a in enumerate(fw.arguments)}
    for a, b in sorted(dashed, key=lambda e: (index[e[0]], index[e[1]])):
        if fw.status(a, b) is AttackStatus.UNKNOWN:
            lines.append(f'  "{a}" -> "{b}" [style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_figure(fw: Framework, path: str, trace: ClosureTrace | None = None) -> None:
    """Draw the framework to an image file with a deterministic circular layout."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import FancyArrowPatch

    n = max(len(fw.arguments), 1)
    radius = 3.0
    pos = {
        arg: (
            radius * math.cos(2 * math.pi * i / n - math.pi / 2),
            -radius * math.sin(2 * math.pi * i / n - math.pi / 2),
        )
        for i, arg in enumerate(fw.arguments)
    }
    colors = _value_colors(fw)
    dashed = {
        e for e in constraint_edges(trace) if fw.status(*e) is AttackStatus.UNKNOWN
    }

    fig, ax = plt.subplots(figsize=(7, 7))
    ax.set_aspect("equal")
    ax.axis("off")

    def draw_edge(a: str, b: str, style: str) -> None:
        if a == b:
            x, y = pos[a]
            ax.annotate(
                "",
                xy=(x, y + 0.42),
                xytext=(x + 0.42, y),
                arrowprops=dict(
                    arrowstyle="-|>",
                    linestyle=style,
                    connectionstyle="arc3,rad=1.6",
                    color="black",
                ),
            )
            return
        patch = FancyArrowPatch(
            pos[a],
            pos[b],
            arrowstyle="-|>",
            mutation_scale=14,
            linestyle=style,
            color="black",
            connectionstyle="arc3,rad=0.08",
            shrinkA=16,
            shrinkB=16,
        )
        ax.add_patch(patch)

    for a, b in fw.present_attacks():
        draw_edge(a, b, "solid")
    index = {a: i for i, a in enumerate(fw.arguments)}
    for a, b in sorted(dashed, key=lambda e: (index[e[0]], index[e[1]])):
        draw_edge(a, b, "dashed")

    for arg in fw.arguments:
        x, y = pos[arg]
        face = colors.get(fw.values.get(arg), "#ffffff")
        ax.scatter([x], [y], s=1600, facecolor=face, edgecolor="black", zorder=3)
        label = _node_label(fw, arg).replace("\\n", "\n")
        ax.annotate(label, (x, y), ha="center", va="center", fontsize=8, zorder=4)

    margin = radius + 1.0
    ax.set_xlim(-margin, margin)
    ax.set_ylim(-margin, margin)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
