"""Claim-aware frameworks: logical closure, the attack-principle fixpoint, and
argumentative consequence.

The principle engine works over three-valued edge statuses. Determinate rules
settle edges to Present or Absent; the disjunctive rules (C&, C->) record
constraints over edge literals which only turn into status updates by unit
propagation. Nothing is ever retracted: a rule that contradicts a settled
edge is reported as a violation and the fixpoint carries on.

Rules fire relativised: every claim a rule instance mentions must occur as a
claim (at the instance's target value, when values are in play) and lie in the
subformula closure of the relativisation set, which defaults to the
framework's own claims.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import LabellingError
from .formula import And, Formula, Implies, Not, Or, render_formula, subformulae
from .framework import AttackStatus, Framework

PRINCIPLE_NAMES = ("A&", "A|", "A->", "B->", "B~", "C&", "C|", "C->", "C~")
CAP = frozenset({"A&", "A|", "B->", "B~", "C&", "C|", "C->", "C~"})
MAP = frozenset({"A&", "A|", "B~", "C&", "C->"})

# Per-pass application order; the trace records pass numbers so runs replay.
_RULE_ORDER = ("A&", "A|", "A->", "B~", "C|", "C&", "C->", "B->", "C~")


@dataclass(frozen=True)
class PrincipleSet:
    enabled: frozenset[str]

    def __post_init__(self):
        unknown = self.enabled - set(PRINCIPLE_NAMES)
        if unknown:
            raise ValueError(f"unknown principles: {sorted(unknown)}")

    def __contains__(self, name: str) -> bool:
        return name in self.enabled

    @classmethod
    def parse(cls, text: str) -> "PrincipleSet":
        token = text.strip()
        if token.upper() == "MAP":
            return cls(MAP)
        if token.upper() == "CAP":
            return cls(CAP)
        return cls(frozenset(part.strip() for part in token.split(",") if part.strip()))


MAP_SET = PrincipleSet(MAP)
CAP_SET = PrincipleSet(CAP)


@dataclass(frozen=True)
class Literal:
    """One branch of a disjunctive conclusion, over occurrence edges.

    A Present literal holds when some edge is Present; an Absent literal when
    every edge is Absent. With unique claim occurrences both collapse to a
    single edge.
    """

    status: AttackStatus
    edges: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class Derivation:
    edge: tuple[str, str]
    status: AttackStatus
    principle: str
    premises: tuple[tuple[str, str], ...]
    pass_no: int


@dataclass
class Constraint:
    principle: str
    literals: tuple[Literal, ...]
    premises: tuple[tuple[str, str], ...]
    pass_no: int
    state: str = "open"  # open | satisfied | propagated | violated


@dataclass(frozen=True)
class Violation:
    principle: str
    description: str
    edges: tuple[tuple[str, str], ...]


@dataclass
class ClosureTrace:
    derived: list[Derivation] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)
    passes: int = 0

    def open_constraints(self) -> list[Constraint]:
        return [c for c in self.constraints if c.state == "open"]

    def derived_with_status(self, status: AttackStatus) -> list[Derivation]:
        return [d for d in self.derived if d.status is status]


class _PrincipleEngine:
    def __init__(
        self,
        fw: Framework,
        principles: PrincipleSet,
        gamma_by_value: Mapping[str | None, Iterable[Formula]] | None,
        value_aware: bool,
    ):
        fw.require_claim_labels()
        if value_aware:
            fw.require_value_labels()
        self.fw = fw
        self.enabled = principles.enabled
        self.value_aware = value_aware
        self.statuses: dict[tuple[str, str], AttackStatus] = dict(fw.attacks)
        self.trace = ClosureTrace()
        self.pass_no = 0
        self.changed = False
        self._seen_constraints: set = set()
        self._seen_violations: set = set()

        self.occ: dict[tuple[Formula, str | None], list[str]] = {}
        for arg in fw.arguments:
            self.occ.setdefault((fw.claims[arg], self.vkey(arg)), []).append(arg)
        self.groups = sorted(
            self.occ.items(),
            key=lambda kv: (render_formula(kv[0][0]), str(kv[0][1])),
        )

        if gamma_by_value is None:
            gamma_by_value = {}
            for arg in fw.arguments:
                gamma_by_value.setdefault(self.vkey(arg), set()).add(fw.claims[arg])
        self.allowed: dict[str | None, frozenset[Formula]] = {}
        for w, formulas in gamma_by_value.items():
            formulas = list(formulas)
            closure: set[Formula] = set()
            for f in formulas:
                closure |= subformulae(f)
            self.allowed[w] = frozenset(closure)

    # -- plumbing ---------------------------------------------------------

    def vkey(self, arg: str) -> str | None:
        return self.fw.values[arg] if self.value_aware else None

    def status(self, edge: tuple[str, str]) -> AttackStatus:
        return self.statuses.get(edge, AttackStatus.UNKNOWN)

    def occurrences(self, formula: Formula, w: str | None) -> list[str]:
        return self.occ.get((formula, w), [])

    def admissible_mention(self, formula: Formula, w: str | None) -> bool:
        return bool(self.occurrences(formula, w)) and formula in self.allowed.get(w, ())

    def present_witness(self, src: str, formula: Formula, w: str | None) -> tuple[str, str] | None:
        for o in self.occurrences(formula, w):
            if self.status((src, o)) is AttackStatus.PRESENT:
                return (src, o)
        return None

    def nonattack_established(self, src: str, formula: Formula, w: str | None) -> bool:
        occs = self.occurrences(formula, w)
        return bool(occs) and all(self.status((src, o)) is AttackStatus.ABSENT for o in occs)

    def set_status(
        self,
        edge: tuple[str, str],
        want: AttackStatus,
        principle: str,
        premises: tuple[tuple[str, str], ...],
    ) -> None:
        current = self.status(edge)
        if current is want:
            return
        if current is AttackStatus.UNKNOWN:
            self.statuses[edge] = want
            self.trace.derived.append(Derivation(edge, want, principle, premises, self.pass_no))
            self.changed = True
        else:
            self.report_violation(
                principle,
                f"rule concludes {edge[0]}->{edge[1]} {want.value} but it is "
                f"established {current.value}",
                (edge,),
            )

    def report_violation(self, principle: str, description: str, edges) -> None:
        key = (principle, description)
        if key in self._seen_violations:
            return
        self._seen_violations.add(key)
        self.trace.violations.append(Violation(principle, description, tuple(edges)))

    # -- determinate rules --------------------------------------------------

    def rule_a_and(self) -> None:
        for (formula, w), targets in self.groups:
            if not isinstance(formula, And):
                continue
            if not (
                self.admissible_mention(formula.left, w)
                and self.admissible_mention(formula.right, w)
            ):
                continue
            for src in self.fw.arguments:
                left = self.present_witness(src, formula.left, w)
                right = self.present_witness(src, formula.right, w)
                if left and right:
                    for t in targets:
                        self.set_status((src, t), AttackStatus.PRESENT, "A&", (left, right))

    def _distribute_over(self, kind, parts_of, name: str) -> None:
        for (formula, w), targets in self.groups:
            if not isinstance(formula, kind):
                continue
            parts = [p for p in parts_of(formula) if self.admissible_mention(p, w)]
            if not parts:
                continue
            for src in self.fw.arguments:
                for t in targets:
                    if self.status((src, t)) is not AttackStatus.PRESENT:
                        continue
                    for part in parts:
                        for o in self.occurrences(part, w):
                            self.set_status((src, o), AttackStatus.PRESENT, name, ((src, t),))

    def rule_a_or(self) -> None:
        self._distribute_over(Or, lambda f: (f.left, f.right), "A|")

    def rule_a_implies(self) -> None:
        self._distribute_over(Implies, lambda f: (f.right,), "A->")

    def rule_b_neg(self) -> None:
        # An argument claiming X that attacks claim ~X is recorded as not
        # attacking the X occurrences at the same target value. Narrower than
        # a blanket negation-pair rule; the pair inconsistency is still
        # caught by the post-fixpoint scan.
        for (formula, w), targets in self.groups:
            if not isinstance(formula, Not):
                continue
            x = formula.operand
            if not self.admissible_mention(x, w):
                continue
            for src in self.fw.arguments:
                if self.fw.claims[src] != x:
                    continue
                for t in targets:
                    if self.status((src, t)) is AttackStatus.PRESENT:
                        for o in self.occurrences(x, w):
                            self.set_status((src, o), AttackStatus.ABSENT, "B~", ((src, t),))

    def rule_c_or(self) -> None:
        for (formula, w), targets in self.groups:
            if not isinstance(formula, Or):
                continue
            if not (
                self.admissible_mention(formula.left, w)
                and self.admissible_mention(formula.right, w)
            ):
                continue
            for src in self.fw.arguments:
                left = self.present_witness(src, formula.left, w)
                right = self.present_witness(src, formula.right, w)
                if left and right:
                    for t in targets:
                        self.set_status((src, t), AttackStatus.PRESENT, "C|", (left, right))

    def rule_b_implies(self) -> None:
        # Fires only on an established non-attack; Unknown is not closed-world.
        for (formula, w), targets in self.groups:
            if not isinstance(formula, Implies):
                continue
            if not (
                self.admissible_mention(formula.left, w)
                and self.admissible_mention(formula.right, w)
            ):
                continue
            for src in self.fw.arguments:
                if not self.nonattack_established(src, formula.left, w):
                    continue
                witness = self.present_witness(src, formula.right, w)
                if witness:
                    for t in targets:
                        self.set_status((src, t), AttackStatus.PRESENT, "B->", (witness,))

    def rule_c_neg(self) -> None:
        for (formula, w), targets in self.groups:
            if not isinstance(formula, Not):
                continue
            x = formula.operand
            if not self.admissible_mention(x, w):
                continue
            for src in self.fw.arguments:
                if self.nonattack_established(src, x, w):
                    premises = tuple((src, o) for o in self.occurrences(x, w))
                    for t in targets:
                        self.set_status((src, t), AttackStatus.PRESENT, "C~", premises)

    # -- disjunctive rules ----------------------------------------------------

    def rule_c_and(self) -> None:
        for (formula, w), targets in self.groups:
            if not isinstance(formula, And):
                continue
            if not (
                self.admissible_mention(formula.left, w)
                and self.admissible_mention(formula.right, w)
            ):
                continue
            for src in self.fw.arguments:
                for t in targets:
                    if self.status((src, t)) is not AttackStatus.PRESENT:
                        continue
                    literals = (
                        self._literal(AttackStatus.PRESENT, src, formula.left, w),
                        self._literal(AttackStatus.PRESENT, src, formula.right, w),
                    )
                    self.emit_constraint("C&", literals, ((src, t),))

    def rule_c_implies(self) -> None:
        for (formula, w), targets in self.groups:
            if not isinstance(formula, Implies):
                continue
            if not (
                self.admissible_mention(formula.left, w)
                and self.admissible_mention(formula.right, w)
            ):
                continue
            for src in self.fw.arguments:
                for t in targets:
                    if self.status((src, t)) is not AttackStatus.PRESENT:
                        continue
                    literals = (
                        self._literal(AttackStatus.ABSENT, src, formula.left, w),
                        self._literal(AttackStatus.PRESENT, src, formula.right, w),
                    )
                    self.emit_constraint("C->", literals, ((src, t),))

    def _literal(self, status: AttackStatus, src: str, formula: Formula, w: str | None) -> Literal:
        return Literal(status, tuple((src, o) for o in self.occurrences(formula, w)))

    def _literal_value(self, lit: Literal) -> bool | None:
        values = [self.status(e) for e in lit.edges]
        if lit.status is AttackStatus.PRESENT:
            if any(v is AttackStatus.PRESENT for v in values):
                return True
            if all(v is AttackStatus.ABSENT for v in values):
                return False
            return None
        if all(v is AttackStatus.ABSENT for v in values):
            return True
        if any(v is AttackStatus.PRESENT for v in values):
            return False
        return None

    def emit_constraint(
        self,
        principle: str,
        literals: tuple[Literal, ...],
        premises: tuple[tuple[str, str], ...],
    ) -> None:
        key = (principle, literals)
        if key in self._seen_constraints:
            return
        self._seen_constraints.add(key)
        values = [self._literal_value(lit) for lit in literals]
        if any(v is True for v in values):
            return  # already satisfied when derived; nothing to record
        constraint = Constraint(principle, literals, premises, self.pass_no)
        self.trace.constraints.append(constraint)
        self._settle(constraint)

    def _settle(self, constraint: Constraint) -> None:
        values = [self._literal_value(lit) for lit in constraint.literals]
        if any(v is True for v in values):
            constraint.state = "satisfied"
            return
        live = [lit for lit, v in zip(constraint.literals, values) if v is None]
        if not live:
            constraint.state = "violated"
            edges = tuple(e for lit in constraint.literals for e in lit.edges)
            self.report_violation(
                constraint.principle,
                "every branch of a disjunctive conclusion is refuted: "
                + " OR ".join(self._describe_literal(lit) for lit in constraint.literals),
                edges,
            )
            return
        if len(live) == 1:
            lit = live[0]
            unknown = [e for e in lit.edges if self.status(e) is AttackStatus.UNKNOWN]
            if lit.status is AttackStatus.ABSENT:
                for e in unknown:
                    self.set_status(e, AttackStatus.ABSENT, constraint.principle, constraint.premises)
                constraint.state = "propagated"
            elif len(unknown) == 1:
                self.set_status(
                    unknown[0], AttackStatus.PRESENT, constraint.principle, constraint.premises
                )
                constraint.state = "propagated"
            # A Present literal over several open occurrence edges stays open:
            # some occurrence must be attacked, but not a determinate one.

    def _describe_literal(self, lit: Literal) -> str:
        edges = ", ".join(f"{a}->{b}" for a, b in lit.edges)
        return f"{lit.status.value}({edges})"

    def propagate(self) -> None:
        progress = True
        while progress:
            progress = False
            for constraint in self.trace.constraints:
                if constraint.state != "open":
                    continue
                before = (constraint.state, self.changed)
                self._settle(constraint)
                if (constraint.state, self.changed) != before:
                    progress = True

    def scan_negation_pairs(self) -> None:
        for (formula, w), _targets in self.groups:
            if not isinstance(formula, Not):
                continue
            x = formula.operand
            if not self.occurrences(x, w):
                continue
            for src in self.fw.arguments:
                pos = self.present_witness(src, x, w)
                neg = self.present_witness(src, formula, w)
                if pos and neg:
                    self.report_violation(
                        "B~",
                        f"{src} attacks both {render_formula(x)} and "
                        f"{render_formula(formula)}"
                        + (f" at value {w}" if w is not None else ""),
                        (pos, neg),
                    )

    _RULES = {
        "A&": rule_a_and,
        "A|": rule_a_or,
        "A->": rule_a_implies,
        "B~": rule_b_neg,
        "C|": rule_c_or,
        "C&": rule_c_and,
        "C->": rule_c_implies,
        "B->": rule_b_implies,
        "C~": rule_c_neg,
    }

    def run(self) -> None:
        while True:
            self.pass_no += 1
            if self.pass_no > 200:
                raise RuntimeError("principle fixpoint did not stabilise")
            self.changed = False
            for name in _RULE_ORDER:
                if name in self.enabled:
                    self._RULES[name](self)
            self.propagate()
            if not self.changed:
                break
        if "B~" in self.enabled:
            self.scan_negation_pairs()
        self.trace.passes = self.pass_no


# -- logical closure -----------------------------------------------------------


def is_logically_closed(
    fw: Framework, gamma: Iterable[Formula]
) -> tuple[bool, frozenset[Formula]]:
    """Does every subformula of gamma occur as some argument's claim?"""
    fw.require_claim_labels()
    need: set[Formula] = set()
    for f in gamma:
        need |= subformulae(f)
    have = set(fw.claims.values())
    missing = frozenset(need - have)
    return (not missing, missing)


def fresh_argument_ids(existing: Iterable[str], count: int) -> list[str]:
    taken = set(existing)
    out: list[str] = []
    n = 1
    while len(out) < count:
        candidate = f"cl_{n}"
        if candidate not in taken:
            out.append(candidate)
            taken.add(candidate)
        n += 1
    return out


def close_logically(fw: Framework, gamma: Iterable[Formula] | None = None) -> Framework:
    """Add one fresh claim-only argument per missing subformula.

    Flat closure is for claim-only frameworks; value-labelled ones close per
    value (see svaf).
    """
    fw.require_claim_labels()
    if fw.value_labelled:
        raise LabellingError("value-labelled frameworks close per value")
    gamma = list(gamma) if gamma is not None else list(fw.claims.values())
    _, missing = is_logically_closed(fw, gamma)
    ordered = sorted(missing, key=render_formula)
    ids = fresh_argument_ids(fw.arguments, len(ordered))
    return fw.with_added_arguments(
        [(arg_id, f, None) for arg_id, f in zip(ids, ordered)]
    )


def apply_principles(
    fw: Framework,
    principles: PrincipleSet,
    gamma: Iterable[Formula] | None = None,
) -> tuple[Framework, ClosureTrace]:
    """Least fixpoint of the enabled rules over three-valued edge statuses."""
    gamma_map = {None: set(gamma)} if gamma is not None else None
    engine = _PrincipleEngine(fw, principles, gamma_map, value_aware=False)
    engine.run()
    return fw.with_attacks(engine.statuses), engine.trace


# -- argumentative consequence ---------------------------------------------------


def argumentative_consequence(fw: Framework, premises: Iterable[str], goal: str) -> bool:
    """Every Present attacker of the goal also attacks some premise."""
    premise_set = set(premises)
    fw.check_arguments(premise_set | {goal})
    for attacker in fw.attackers_of(goal):
        if not any(fw.status(attacker, p) is AttackStatus.PRESENT for p in premise_set):
            return False
    return True


def consequence_sets(fw: Framework, gamma: Iterable[str], delta: Iterable[str]) -> bool:
    """Arguments attacking every member of delta must attack some member of gamma."""
    gamma_set, delta_set = set(gamma), set(delta)
    fw.check_arguments(gamma_set | delta_set)
    for x in fw.arguments:
        if all(fw.status(x, f) is AttackStatus.PRESENT for f in delta_set):
            if not any(fw.status(x, g) is AttackStatus.PRESENT for g in gamma_set):
                return False
    return True


def consequence_over_collection(
    fws: Iterable[Framework], premises: Iterable[str], goal: str
) -> bool:
    frameworks = list(fws)
    if not frameworks:
        warnings.warn("empty framework collection: consequence holds vacuously")
        return True
    premises = list(premises)
    return all(argumentative_consequence(fw, premises, goal) for fw in frameworks)


def consequence_sets_over_collection(
    fws: Iterable[Framework], gamma: Iterable[str], delta: Iterable[str]
) -> bool:
    frameworks = list(fws)
    if not frameworks:
        warnings.warn("empty framework collection: consequence holds vacuously")
        return True
    gamma, delta = list(gamma), list(delta)
    return all(consequence_sets(fw, gamma, delta) for fw in frameworks)
