"""The line-based .arg document format.

Grammar (one directive per line, ``#`` starts a comment):

    value <name>
    fact <name>
    order <v1> > <v2> [> ...]
    arg <id> [value=<name>] [claim="<formula>"]
    att <attacker> <target>
    natt <attacker> <target>

``att`` records a given attack, ``natt`` an asserted non-attack; every other
pair is unknown. Serialising and re-parsing a framework reproduces it exactly
(comments and spacing aside).
"""

from __future__ import annotations

import re

from .errors import DocumentError, FormulaSyntaxError
from .framework import AttackStatus, Framework, ValueOrder
from .formula import Formula, parse_formula, render_formula

_ID_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_ARG_LINE_RE = re.compile(
    r"arg\s+(?P<id>\S+)"
    r"(?:\s+value=(?P<value>\S+))?"
    r'(?:\s+claim="(?P<claim>[^"]*)")?'
    r"\s*\Z"
)


def _check_name(kind: str, name: str, line: int) -> str:
    if not _ID_RE.match(name):
        raise DocumentError(f"invalid {kind} name {name!r}", line)
    return name


def parse_document(text: str) -> Framework:
    """Parse a document into a Framework, with line-numbered diagnostics."""
    arguments: list[str] = []
    claims: dict[str, Formula] = {}
    values: dict[str, str] = {}
    declared_values: list[str] = []
    fact_value: str | None = None
    order_line: tuple[int, list[str]] | None = None
    attacks: dict[tuple[str, str], AttackStatus] = {}
    attack_lines: list[tuple[int, str, str, AttackStatus]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        rest = line[len(head):].strip()
        if head == "value":
            name = _check_name("value", rest, lineno)
            if name in declared_values or name == fact_value:
                raise DocumentError(f"value {name!r} declared twice", lineno)
            declared_values.append(name)
        elif head == "fact":
            name = _check_name("value", rest, lineno)
            if fact_value is not None:
                raise DocumentError("only one fact tier is supported", lineno)
            if name in declared_values:
                raise DocumentError(f"value {name!r} already declared", lineno)
            fact_value = name
        elif head == "order":
            if order_line is not None:
                raise DocumentError("duplicate order directive", lineno)
            names = [part.strip() for part in rest.split(">")]
            if any(not n for n in names):
                raise DocumentError(f"malformed order {rest!r}", lineno)
            order_line = (lineno, names)
        elif head == "arg":
            m = _ARG_LINE_RE.match(line)
            if not m:
                raise DocumentError(f"malformed arg directive {raw.strip()!r}", lineno)
            arg_id = _check_name("argument", m.group("id"), lineno)
            if arg_id in claims or arg_id in values or arg_id in arguments:
                raise DocumentError(f"argument {arg_id!r} declared twice", lineno)
            arguments.append(arg_id)
            if m.group("value") is not None:
                values[arg_id] = m.group("value")
            if m.group("claim") is not None:
                try:
                    claims[arg_id] = parse_formula(m.group("claim"))
                except FormulaSyntaxError as exc:
                    raise DocumentError(f"bad claim for {arg_id!r}: {exc}", lineno)
        elif head in ("att", "natt"):
            parts = rest.split()
            if len(parts) != 2:
                raise DocumentError(f"{head} needs exactly two argument ids", lineno)
            status = AttackStatus.PRESENT if head == "att" else AttackStatus.ABSENT
            attack_lines.append((lineno, parts[0], parts[1], status))
        else:
            raise DocumentError(f"unknown directive {head!r}", lineno)

    known = set(arguments)
    for lineno, a, b, status in attack_lines:
        for name in (a, b):
            if name not in known:
                raise DocumentError(f"undeclared argument {name!r}", lineno)
        if (a, b) in attacks and attacks[(a, b)] is not status:
            raise DocumentError(f"contradictory att/natt for {a}->{b}", lineno)
        attacks[(a, b)] = status

    if values and len(values) != len(arguments):
        missing = sorted(known - set(values))
        raise DocumentError(f"arguments without values: {missing} (label all or none)")
    if claims and len(claims) != len(arguments):
        missing = sorted(known - set(claims))
        raise DocumentError(f"arguments without claims: {missing} (label all or none)")

    declared = set(declared_values) | ({fact_value} if fact_value else set())
    for arg_id, value in values.items():
        if value not in declared:
            raise DocumentError(f"argument {arg_id!r} uses undeclared value {value!r}")

    declared_order: ValueOrder | None = None
    if order_line is not None:
        lineno, names = order_line
        ranking = [n for n in names if n != fact_value]
        if sorted(ranking) != sorted(declared_values):
            raise DocumentError(
                f"order must rank exactly the declared values {declared_values}", lineno
            )
        declared_order = ValueOrder(tuple(ranking), fact_value)

    return Framework(
        arguments=tuple(arguments),
        attacks=attacks,
        claims=claims,
        values=values,
        declared_values=tuple(declared_values),
        fact_value=fact_value,
        declared_order=declared_order,
    )


def serialize_document(fw: Framework) -> str:
    """Deterministic text for a framework; parse_document inverts it."""
    lines: list[str] = []
    for name in fw.declared_values:
        lines.append(f"value {name}")
    if fw.fact_value is not None:
        lines.append(f"fact {fw.fact_value}")
    if fw.declared_order is not None:
        lines.append("order " + " > ".join(
            ((fw.declared_order.fact,) if fw.declared_order.fact else ())
            + fw.declared_order.ranking
        ))
    for arg in fw.arguments:
        parts = [f"arg {arg}"]
        if arg in fw.values:
            parts.append(f"value={fw.values[arg]}")
        if arg in fw.claims:
            parts.append(f'claim="{render_formula(fw.claims[arg])}"')
        lines.append(" ".join(parts))
    index = {a: i for i, a in enumerate(fw.arguments)}
    settled = sorted(fw.attacks.items(), key=lambda kv: (index[kv[0][0]], index[kv[0][1]]))
    for (a, b), status in settled:
        if status is AttackStatus.PRESENT:
            lines.append(f"att {a} {b}")
    for (a, b), status in settled:
        if status is AttackStatus.ABSENT:
            lines.append(f"natt {a} {b}")
    return "\n".join(lines) + "\n"


def load_document(path) -> Framework:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_document(handle.read())
