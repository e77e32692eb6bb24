"""Value-labelled claims: per-value logical closure, value-aware attack
principles, and subjective/objective argumentative consequence.

Closure is value-local: a claim occurring under one value never satisfies the
closure requirement of another. Rule instances keep their target value fixed,
so no principle ever invents a cross-value edge.
"""

from __future__ import annotations

import warnings
from typing import Iterable, Mapping

from .errors import LabellingError
from .formula import Formula, render_formula, subformulae
from .framework import AttackStatus, Framework, ValueOrder
from .saf import ClosureTrace, PrincipleSet, _PrincipleEngine, fresh_argument_ids
from .vaf import defeats as svaf_defeats
from .vaf import enumerate_orders, order_for


def svaf_validate(fw: Framework, order: ValueOrder | str | None = None) -> list[str]:
    """Itemised labelling and ordering problems; empty means the framework is
    a well-formed value-labelled claim framework."""
    issues: list[str] = []
    if not fw.claim_labelled:
        issues.append("arguments carry no claims")
    if not fw.value_labelled:
        issues.append("arguments carry no values")
    if fw.value_labelled and not fw.declared_values and fw.fact_value is None:
        issues.append("no values declared")
    if order is not None:
        try:
            parsed = order_for(fw, order) if isinstance(order, str) else order
            if sorted(parsed.ranking) != sorted(fw.declared_values):
                issues.append(
                    f"order {parsed} does not rank exactly the declared values"
                )
        except (ValueError, LabellingError) as exc:
            # Duplicates break irreflexivity/asymmetry of the strict order.
            issues.append(f"invalid value order: {exc}")
    return issues


def value_closure_missing(fw: Framework) -> dict[str, frozenset[Formula]]:
    """Per value, the subformulae that do not occur as claims under it."""
    fw.require_claim_labels()
    fw.require_value_labels()
    missing: dict[str, frozenset[Formula]] = {}
    for value in fw.used_values():
        claims_here = {fw.claims[a] for a in fw.arguments if fw.values[a] == value}
        need: set[Formula] = set()
        for f in claims_here:
            need |= subformulae(f)
        gap = frozenset(need - claims_here)
        if gap:
            missing[value] = gap
    return missing


def is_value_closed(fw: Framework) -> bool:
    return not value_closure_missing(fw)


def svaf_close_logically(fw: Framework) -> Framework:
    """Per value, add a fresh argument for each missing subformula."""
    missing = value_closure_missing(fw)
    additions: list[tuple[Formula, str]] = []
    for value in fw.used_values():
        for f in sorted(missing.get(value, ()), key=render_formula):
            additions.append((f, value))
    ids = fresh_argument_ids(fw.arguments, len(additions))
    return fw.with_added_arguments(
        [(arg_id, f, value) for arg_id, (f, value) in zip(ids, additions)]
    )


def svaf_apply_principles(
    fw: Framework,
    principles: PrincipleSet,
    gamma_by_value: Mapping[str, Iterable[Formula]] | None = None,
) -> tuple[Framework, ClosureTrace]:
    """Value-aware principle fixpoint; see saf.apply_principles."""
    if not is_value_closed(fw):
        warnings.warn("framework is not value-closed; principles may miss instances")
    engine = _PrincipleEngine(fw, principles, gamma_by_value, value_aware=True)
    engine.run()
    return fw.with_attacks(engine.statuses), engine.trace


# -- consequence ---------------------------------------------------------------


def _defeaters_of(fw: Framework, order: ValueOrder, target: str) -> list[str]:
    return [y for y in fw.attackers_of(target) if svaf_defeats(fw, order, y, target)]


def subjective_consequence(
    fw: Framework, order: ValueOrder, premises: Iterable[str], goal: str
) -> bool:
    """Every defeater of the goal under the order defeats some premise."""
    premise_set = set(premises)
    fw.check_arguments(premise_set | {goal})
    for d in _defeaters_of(fw, order, goal):
        if not any(svaf_defeats(fw, order, d, p) for p in premise_set):
            return False
    return True


def subjective_consequence_witnesses(
    fw: Framework, premises: Iterable[str], goal: str
) -> list[ValueOrder]:
    premises = list(premises)
    return [o for o in enumerate_orders(fw) if subjective_consequence(fw, o, premises, goal)]


def objective_consequence(fw: Framework, premises: Iterable[str], goal: str) -> bool:
    """Subjective under every enumerated total order."""
    premises = list(premises)
    return all(
        subjective_consequence(fw, order, premises, goal)
        for order in enumerate_orders(fw)
    )


def consequence_base(fw: Framework, order: ValueOrder, goal: str) -> frozenset[str]:
    """Union over the goal's defeaters of everything they defeat.

    The goal always belongs to its own base (each of its defeaters defeats
    it), so the base is trivially a premise set witnessing subjective
    consequence under the same order.
    """
    fw.check_arguments((goal,))
    base: set[str] = set()
    for d in _defeaters_of(fw, order, goal):
        base |= {x for x in fw.arguments if svaf_defeats(fw, order, d, x)}
    return frozenset(base)


def svaf_consequence_sets(
    fw: Framework, order: ValueOrder, gamma: Iterable[str], delta: Iterable[str]
) -> bool:
    """Arguments defeating every member of delta must defeat some member of gamma."""
    gamma_set, delta_set = set(gamma), set(delta)
    fw.check_arguments(gamma_set | delta_set)
    for x in fw.arguments:
        if all(svaf_defeats(fw, order, x, f) for f in delta_set):
            if not any(svaf_defeats(fw, order, x, g) for g in gamma_set):
                return False
    return True


def svaf_consequence_sets_subjective(
    fw: Framework, gamma: Iterable[str], delta: Iterable[str]
) -> tuple[bool, list[ValueOrder]]:
    gamma, delta = list(gamma), list(delta)
    witnesses = [
        o for o in enumerate_orders(fw) if svaf_consequence_sets(fw, o, gamma, delta)
    ]
    return (bool(witnesses), witnesses)


def svaf_consequence_sets_objective(
    fw: Framework, gamma: Iterable[str], delta: Iterable[str]
) -> bool:
    gamma, delta = list(gamma), list(delta)
    return all(
        svaf_consequence_sets(fw, o, gamma, delta) for o in enumerate_orders(fw)
    )


def svaf_consequence_over_collection(
    fws: Iterable[Framework],
    premises: Iterable[str],
    goal: str,
    *,
    objective: bool = False,
    order: ValueOrder | None = None,
) -> bool:
    """Conjunction of the per-framework judgement over a collection.

    With ``order`` fixed, each framework is judged under that order; with
    ``objective`` every order must work per framework; otherwise each
    framework may pick its own witnessing order.
    """
    frameworks = list(fws)
    if not frameworks:
        warnings.warn("empty framework collection: consequence holds vacuously")
        return True
    premises = list(premises)
    out = True
    for fw in frameworks:
        if order is not None:
            out = out and subjective_consequence(fw, order, premises, goal)
        elif objective:
            out = out and objective_consequence(fw, premises, goal)
        else:
            out = out and bool(subjective_consequence_witnesses(fw, premises, goal))
    return out
