"""Command-line interface.

Subcommands: check, extensions, classify, chains, close, consequence, export.
Exit codes: 0 on success, 1 when violations or cross-check failures are
reported, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import af, saf, svaf, vaf
from .document import load_document, serialize_document
from .errors import ArgumentationError
from .export import export_dot, render_figure
from .formula import render_formula
from .framework import AttackStatus, Framework, ValueOrder
from .saf import ClosureTrace, PrincipleSet

REPORT_VERSION = 1


# -- report plumbing -----------------------------------------------------------


def framework_json(fw: Framework) -> dict:
    arguments = []
    for arg in fw.arguments:
        entry: dict = {"id": arg}
        if arg in fw.claims:
            entry["claim"] = render_formula(fw.claims[arg])
        if arg in fw.values:
            entry["value"] = fw.values[arg]
        arguments.append(entry)
    index = {a: i for i, a in enumerate(fw.arguments)}
    settled = sorted(fw.attacks.items(), key=lambda kv: (index[kv[0][0]], index[kv[0][1]]))
    return {
        "arguments": arguments,
        "values": list(fw.declared_values),
        "fact": fw.fact_value,
        "order": str(fw.declared_order) if fw.declared_order else None,
        "attacks": [[a, b, status.value] for (a, b), status in settled],
    }


def trace_json(trace: ClosureTrace | None) -> dict | None:
    if trace is None:
        return None
    return {
        "passes": trace.passes,
        "derived": [
            {
                "edge": list(d.edge),
                "status": d.status.value,
                "principle": d.principle,
                "premises": [list(e) for e in d.premises],
                "pass": d.pass_no,
            }
            for d in trace.derived
        ],
        "constraints": [
            {
                "principle": c.principle,
                "state": c.state,
                "literals": [
                    {"status": lit.status.value, "edges": [list(e) for e in lit.edges]}
                    for lit in c.literals
                ],
                "premises": [list(e) for e in c.premises],
                "pass": c.pass_no,
            }
            for c in trace.constraints
        ],
        "violations": violations_json(trace),
    }


def violations_json(trace: ClosureTrace | None) -> list:
    if trace is None:
        return []
    return [
        {
            "principle": v.principle,
            "description": v.description,
            "edges": [list(e) for e in v.edges],
        }
        for v in trace.violations
    ]


def make_report(command: str, fw: Framework, results: dict, trace: ClosureTrace | None = None) -> dict:
    return {
        "framework": framework_json(fw),
        "command": command,
        "results": results,
        "trace": trace_json(trace),
        "violations": violations_json(trace),
        "version": REPORT_VERSION,
    }


def emit(report: dict, text_lines: Sequence[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2))
    else:
        for line in text_lines:
            print(line)


def extension_lists(extensions) -> list[list[str]]:
    return [sorted(e) for e in extensions]


def fmt_set(members) -> str:
    return "{" + ", ".join(sorted(members)) + "}"


# -- shared option handling ------------------------------------------------------


def resolve_order(fw: Framework, text: str | None) -> ValueOrder | None:
    if text is not None:
        return vaf.order_for(fw, text)
    return fw.declared_order


def apply_resolutions(fw: Framework, assignments: Sequence[str] | None) -> Framework:
    """Fix edge statuses before closure, from ``a->b=present|absent`` flags."""
    if not assignments:
        return fw
    statuses = dict(fw.attacks)
    for item in assignments:
        try:
            edge_text, status_text = item.split("=")
            attacker, target = edge_text.split("->")
        except ValueError:
            raise ArgumentationError(
                f"malformed --resolve {item!r}; expected a->b=present|absent"
            )
        attacker, target, status_text = attacker.strip(), target.strip(), status_text.strip()
        fw.check_arguments((attacker, target))
        if status_text not in ("present", "absent"):
            raise ArgumentationError(f"--resolve status must be present or absent, got {status_text!r}")
        statuses[(attacker, target)] = (
            AttackStatus.PRESENT if status_text == "present" else AttackStatus.ABSENT
        )
    return fw.with_attacks(statuses)


def run_closure(fw: Framework, args) -> tuple[Framework, ClosureTrace | None]:
    """Apply --logical / --resolve / --principles, value-aware when labelled.

    Resolutions run after logical closure (so closure-added arguments can be
    named) and before the principle fixpoint (so a resolved edge settles the
    constraints it appears in).
    """
    trace = None
    if getattr(args, "logical", False):
        fw.require_claim_labels()
        fw = svaf.svaf_close_logically(fw) if fw.value_labelled else saf.close_logically(fw)
    fw = apply_resolutions(fw, getattr(args, "resolve", None))
    if getattr(args, "principles", None):
        fw.require_claim_labels()
        principles = PrincipleSet.parse(args.principles)
        if fw.value_labelled:
            fw, trace = svaf.svaf_apply_principles(fw, principles)
        else:
            fw, trace = saf.apply_principles(fw, principles)
    return fw, trace


# -- subcommands ------------------------------------------------------------------


def cmd_check(args) -> int:
    fw = load_document(args.file)
    issues: list[str] = []
    notes: list[str] = []
    if fw.claim_labelled and fw.value_labelled:
        kind = "value-labelled claim framework"
        missing = svaf.value_closure_missing(fw)
        for value, formulas in sorted(missing.items()):
            rendered = ", ".join(sorted(render_formula(f) for f in formulas))
            notes.append(f"not logically closed for value {value}: missing {rendered}")
    elif fw.claim_labelled:
        kind = "claim-labelled framework"
        closed, missing = saf.is_logically_closed(fw, fw.claims.values())
        if not closed:
            rendered = ", ".join(sorted(render_formula(f) for f in missing))
            notes.append(f"not logically closed: missing {rendered}")
    elif fw.value_labelled:
        kind = "value-labelled framework"
    else:
        kind = "plain attack framework"
    if fw.value_labelled:
        issues.extend(
            i for i in svaf.svaf_validate(fw, args.order) if "claims" not in i
        )
    present = sum(1 for s in fw.attacks.values() if s is AttackStatus.PRESENT)
    absent = len(fw.attacks) - present
    results = {
        "kind": kind,
        "argument_count": len(fw.arguments),
        "attack_count": present,
        "non_attack_count": absent,
        "notes": notes,
        "issues": issues,
    }
    lines = [
        f"{args.file}: {kind}",
        f"  arguments: {len(fw.arguments)}  attacks: {present}  non-attacks: {absent}",
    ]
    lines += [f"  note: {n}" for n in notes]
    lines += [f"  issue: {i}" for i in issues] or ["  no issues"]
    emit(make_report("check", fw, results), lines, args.format)
    return 1 if issues else 0


def cmd_extensions(args) -> int:
    fw = load_document(args.file)
    order = resolve_order(fw, args.order) if fw.value_labelled else None
    target = vaf.defeat_graph(fw, order) if order is not None else fw
    note = None
    if fw.value_labelled and order is None:
        note = "values ignored (no order given); computing on the raw attack graph"

    if args.semantics == "preferred":
        primary = af.preferred_extensions(target, args.cap)
        oracle = af.preferred_extensions_bruteforce(target, args.cap) if args.oracle else None
    elif args.semantics == "stable":
        primary = af.stable_extensions(target, args.cap)
        oracle = af.stable_extensions_bruteforce(target, args.cap) if args.oracle else None
    else:
        primary = af.admissible_sets(target, args.cap)
        oracle = None
        if args.oracle:
            subsets = af.preferred_extensions_bruteforce(target, args.cap)
            # admissible has no dedicated twin; cross-check maximal elements
            maximal = [s for s in primary if not any(s < t for t in primary)]
            if af.sort_extensions(maximal) != subsets:
                print("oracle mismatch on maximal admissible sets", file=sys.stderr)
                return 1

    mismatch = oracle is not None and oracle != primary
    results = {
        "semantics": args.semantics,
        "order": str(order) if order else None,
        "extensions": extension_lists(primary),
    }
    if note:
        results["note"] = note
    if args.oracle:
        results["oracle_checked"] = not mismatch
    lines = []
    if note:
        lines.append(f"note: {note}")
    lines.append(f"{args.semantics} extensions" + (f" under {order}" if order else "") + ":")
    lines += [f"  {fmt_set(e)}" for e in primary] or ["  (none)"]
    emit(make_report("extensions", fw, results), lines, args.format)
    if mismatch:
        print("oracle mismatch: brute-force scan disagrees", file=sys.stderr)
        return 1
    return 0


def _classification_results(report: vaf.ClassificationReport) -> dict:
    orders = [str(o) for o in report.orders]
    per_argument = {}
    for arg, entry in report.entries.items():
        item: dict = {
            "status": entry.status,
            "witness_orders": [str(o) for o in entry.witness_orders],
        }
        if entry.path is not None:
            item["path"] = entry.path
            item["caoc"] = entry.caoc
            item["aaoc"] = entry.aaoc
        if report.chains is not None:
            item["chains"] = [
                {"chain": "/".join(report.chains.chains[ci].members), "position": pos}
                for ci, pos in report.chains.positions[arg]
            ]
        per_argument[arg] = item
    results = {
        "method": report.method,
        "orders": orders,
        "arguments": per_argument,
        "objective": sorted(report.objective()),
        "indefensible": sorted(report.indefensible()),
        "subjective": {
            str(o): sorted(report.subjective_only_under(o)) for o in report.orders
        },
    }
    return results


def cmd_classify(args) -> int:
    fw = load_document(args.file)
    fw.require_value_labels()
    if args.method == "paths":
        report = vaf.classify_by_paths(fw)
    else:
        report = vaf.classify_by_enumeration(fw, args.cap)
    mismatch = False
    if args.oracle:
        if args.method == "paths":
            other = vaf.classify_by_enumeration(fw, args.cap)
        else:
            other = _classify_by_enumeration_bruteforce(fw, args.cap)
        for arg in fw.arguments:
            left, right = report.entries[arg], other.entries[arg]
            if left.status != right.status or left.witness_orders != right.witness_orders:
                print(f"oracle mismatch on {arg}", file=sys.stderr)
                mismatch = True
    results = _classification_results(report)
    if args.oracle:
        results["oracle_checked"] = not mismatch
    lines = [f"classification ({report.method}):"]
    lines.append(f"  objective: {fmt_set(report.objective())}")
    for order in report.orders:
        members = report.subjective_only_under(order)
        lines.append(f"  acceptable only under {order}: {fmt_set(members)}")
    lines.append(f"  indefensible: {fmt_set(report.indefensible())}")
    emit(make_report("classify", fw, results), lines, args.format)
    return 1 if mismatch else 0


def _classify_by_enumeration_bruteforce(fw: Framework, cap: int) -> vaf.ClassificationReport:
    orders = tuple(vaf.enumerate_orders(fw))
    acceptable = {}
    for order in orders:
        extensions = af.preferred_extensions_bruteforce(vaf.defeat_graph(fw, order), cap)
        acceptable[order] = set().union(*extensions) if extensions else set()
    entries = {}
    for arg in fw.arguments:
        witnesses = tuple(o for o in orders if arg in acceptable[o])
        entries[arg] = vaf.ArgumentClassification(
            argument=arg,
            status=vaf._status_from_witnesses(witnesses, len(orders)),
            witness_orders=witnesses,
        )
    return vaf.ClassificationReport(method="enumerate-bruteforce", orders=orders, entries=entries)


def cmd_chains(args) -> int:
    fw = load_document(args.file)
    analysis = vaf.extract_chains(fw)
    results = {
        "chains": [
            {"value": c.value, "members": list(c.members)} for c in analysis.chains
        ],
        "parity": dict(analysis.parity),
    }
    lines = ["chains:"]
    for chain in analysis.chains:
        lines.append(f"  [{chain.value}] " + " -> ".join(chain.members))
    lines.append("parity: " + ", ".join(f"{a}={analysis.parity[a]}" for a in fw.arguments))
    emit(make_report("chains", fw, results), lines, args.format)
    return 0


def cmd_close(args) -> int:
    fw = load_document(args.file)
    fw.require_claim_labels()
    if not args.principles:
        args.principles = "MAP"
    closed, trace = run_closure(fw, args)
    if args.format == "dot":
        print(export_dot(closed, trace), end="")
        return 1 if trace and trace.violations else 0
    derived = trace.derived if trace else []
    open_constraints = trace.open_constraints() if trace else []
    results = {
        "principles": sorted(PrincipleSet.parse(args.principles).enabled),
        "logical_closure": bool(args.logical),
        "added_arguments": [a for a in closed.arguments if a not in fw.arguments],
        "derived_present": [
            list(d.edge) for d in derived if d.status is AttackStatus.PRESENT
        ],
        "derived_absent": [
            list(d.edge) for d in derived if d.status is AttackStatus.ABSENT
        ],
        "open_constraints": len(open_constraints),
    }
    lines = []
    added = results["added_arguments"]
    if added:
        rendered = ", ".join(
            f"{a}:{render_formula(closed.claims[a])}"
            + (f"@{closed.values[a]}" if a in closed.values else "")
            for a in added
        )
        lines.append(f"closure added: {rendered}")
    lines.append("derived:")
    for d in derived:
        lines.append(
            f"  [{d.principle}] {d.edge[0]} -> {d.edge[1]} {d.status.value} (pass {d.pass_no})"
        )
    if not derived:
        lines.append("  (none)")
    for c in open_constraints:
        branches = " OR ".join(
            f"{lit.status.value}({', '.join(f'{a}->{b}' for a, b in lit.edges)})"
            for lit in c.literals
        )
        lines.append(f"unresolved [{c.principle}]: {branches}")
    if trace:
        for v in trace.violations:
            lines.append(f"violation [{v.principle}]: {v.description}")
    emit(make_report("close", closed, results, trace), lines, args.format)
    return 1 if trace and trace.violations else 0


def cmd_consequence(args) -> int:
    frameworks = [load_document(f) for f in args.files]
    processed = []
    trace = None
    for fw in frameworks:
        closed, t = run_closure(fw, args)
        processed.append(closed)
        trace = trace or t
    premises = [p for p in (args.premises.split(",") if args.premises else []) if p]
    delta = [d for d in (args.delta.split(",") if args.delta else []) if d]
    if not delta and not args.goal:
        raise ArgumentationError("provide --goal (or --delta for the set form)")

    value_mode = all(fw.value_labelled for fw in processed)
    per_framework = []
    overall = True
    base_out = None
    for path, fw in zip(args.files, processed):
        entry: dict = {"file": str(path)}
        if delta:
            if value_mode:
                if args.order:
                    order = vaf.order_for(fw, args.order)
                    verdict = svaf.svaf_consequence_sets(fw, order, premises, delta)
                elif args.objective:
                    verdict = svaf.svaf_consequence_sets_objective(fw, premises, delta)
                else:
                    verdict, witnesses = svaf.svaf_consequence_sets_subjective(fw, premises, delta)
                    entry["witness_orders"] = [str(o) for o in witnesses]
            else:
                verdict = saf.consequence_sets(fw, premises, delta)
        elif value_mode:
            if args.order:
                order = vaf.order_for(fw, args.order)
                verdict = svaf.subjective_consequence(fw, order, premises, args.goal)
                if args.base:
                    base_out = sorted(svaf.consequence_base(fw, order, args.goal))
            elif args.objective:
                verdict = svaf.objective_consequence(fw, premises, args.goal)
            else:
                witnesses = svaf.subjective_consequence_witnesses(fw, premises, args.goal)
                verdict = bool(witnesses)
                entry["witness_orders"] = [str(o) for o in witnesses]
        else:
            if args.order or args.objective or args.subjective:
                raise ArgumentationError("order flags need value-labelled frameworks")
            verdict = saf.argumentative_consequence(fw, premises, args.goal)
        entry["holds"] = verdict
        per_framework.append(entry)
        overall = overall and verdict

    mode = "sets" if delta else "single-goal"
    quantifier = (
        f"order {args.order}"
        if args.order
        else ("objective" if args.objective else ("subjective" if value_mode else "plain"))
    )
    results = {
        "mode": mode,
        "quantifier": quantifier,
        "goal": args.goal,
        "premises": premises,
        "delta": delta or None,
        "per_framework": per_framework,
        "holds": overall,
    }
    if base_out is not None:
        results["consequence_base"] = base_out
    lines = []
    for entry in per_framework:
        detail = f" (witnesses: {', '.join(entry['witness_orders'])})" if entry.get("witness_orders") else ""
        lines.append(f"{entry['file']}: {'holds' if entry['holds'] else 'does not hold'}{detail}")
    lines.append(f"overall: {'holds' if overall else 'does not hold'}")
    if base_out is not None:
        lines.append(f"consequence base: {fmt_set(base_out)}")
    emit(make_report("consequence", processed[0], results, trace), lines, args.format)
    return 0


def cmd_export(args) -> int:
    fw = load_document(args.file)
    closed, trace = run_closure(fw, args)
    if args.format == "png":
        if not args.out:
            raise ArgumentationError("--format png needs --out PATH")
        render_figure(closed, args.out, trace)
        print(f"wrote {args.out}")
        return 0
    if args.format == "json":
        payload = json.dumps(make_report("export", closed, {}, trace), indent=2)
    elif args.format == "arg":
        payload = serialize_document(closed)
    else:
        payload = export_dot(closed, trace)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(payload if payload.endswith("\n") else payload + "\n")
        print(f"wrote {args.out}")
    else:
        print(payload, end="" if payload.endswith("\n") else "\n")
    return 0


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="argsem",
        description="Extension semantics, value orderings, and claim-aware attack closure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, fmt_choices=("text", "json")):
        p.add_argument("--format", choices=fmt_choices, default="text")

    p = sub.add_parser("check", help="validate a document and report its flavour")
    p.add_argument("file")
    p.add_argument("--order", help="value order like D>C to validate against")
    add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("extensions", help="enumerate extensions")
    p.add_argument("file")
    p.add_argument("--semantics", choices=("preferred", "stable", "admissible"), default="preferred")
    p.add_argument("--order", help="value order like D>C; defaults to the document's order")
    p.add_argument("--oracle", action="store_true", help="cross-check with the brute-force scan")
    p.add_argument("--cap", type=int, default=af.DEFAULT_CAP)
    add_common(p)
    p.set_defaults(func=cmd_extensions)

    p = sub.add_parser("classify", help="objective/subjective/indefensible statuses")
    p.add_argument("file")
    p.add_argument("--method", choices=("enumerate", "paths"), default="enumerate")
    p.add_argument("--oracle", action="store_true", help="cross-check against the other route")
    p.add_argument("--cap", type=int, default=af.DEFAULT_CAP)
    add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("chains", help="same-value chain decomposition")
    p.add_argument("file")
    add_common(p)
    p.set_defaults(func=cmd_chains)

    p = sub.add_parser("close", help="logical closure and attack principles")
    p.add_argument("file")
    p.add_argument("--principles", default="MAP", help="MAP, CAP, or a comma list like A&,B~")
    p.add_argument("--logical", action="store_true", help="apply logical/value closure first")
    p.add_argument("--resolve", action="append", metavar="A->B=present|absent",
                   help="fix an edge's status before the fixpoint (repeatable)")
    add_common(p, ("text", "json", "dot"))
    p.set_defaults(func=cmd_close)

    p = sub.add_parser("consequence", help="argumentative consequence")
    p.add_argument("files", nargs="+")
    p.add_argument("--goal")
    p.add_argument("--premises", help="comma-separated argument ids")
    p.add_argument("--delta", help="comma-separated ids for the set form")
    p.add_argument("--order", help="judge under this value order")
    p.add_argument("--objective", action="store_true", help="require every order")
    p.add_argument("--subjective", action="store_true", help="require some order")
    p.add_argument("--base", action="store_true", help="also print the consequence base (needs --order)")
    p.add_argument("--logical", action="store_true")
    p.add_argument("--principles")
    p.add_argument("--resolve", action="append", metavar="A->B=present|absent")
    add_common(p)
    p.set_defaults(func=cmd_consequence)

    p = sub.add_parser("export", help="DOT, JSON, .arg, or PNG rendering")
    p.add_argument("file")
    p.add_argument("--format", choices=("dot", "json", "png", "arg"), default="dot")
    p.add_argument("--out", help="output path (required for png)")
    p.add_argument("--logical", action="store_true")
    p.add_argument("--principles")
    p.add_argument("--resolve", action="append", metavar="A->B=present|absent")
    p.set_defaults(func=cmd_export)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except ArgumentationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
