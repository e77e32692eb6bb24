"""The shared framework container and strict value orderings.

A single ``Framework`` holds every flavour the package works with: a plain
attack graph, a value-labelled graph, a claim-labelled graph, or both labels
at once. Attack edges carry a three-valued status so that derived non-attacks
and not-yet-settled edges can be represented next to given attacks.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping

from .errors import LabellingError, UnknownArgumentError
from .formula import Formula


class AttackStatus(Enum):
    PRESENT = "present"
    ABSENT = "absent"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ValueOrder:
    """A strict total order over value names, most-preferred first.

    The optional fact tier is a single value pinned above every ranked value.
    As a relation the order is transitive, irreflexive and asymmetric by
    construction.
    """

    ranking: tuple[str, ...]
    fact: str | None = None

    def __post_init__(self):
        seen = set(self.ranking)
        if len(seen) != len(self.ranking):
            raise ValueError(f"duplicate values in order {self.ranking}")
        if self.fact is not None and self.fact in seen:
            raise ValueError(f"fact value {self.fact!r} cannot appear in the ranking")

    def prefers(self, x: str, y: str) -> bool:
        """True iff value x is strictly preferred over value y."""
        for v in (x, y):
            if v != self.fact and v not in self.ranking:
                raise LabellingError(f"value {v!r} not covered by order {self}")
        if x == y:
            return False
        if x == self.fact:
            return True
        if y == self.fact:
            return False
        return self.ranking.index(x) < self.ranking.index(y)

    def top(self) -> str:
        return self.fact if self.fact is not None else self.ranking[0]

    def __str__(self) -> str:
        parts = ((self.fact,) if self.fact else ()) + self.ranking
        return ">".join(parts)

    @classmethod
    def parse(cls, text: str, fact: str | None = None) -> "ValueOrder":
        names = [part.strip() for part in text.split(">")]
        if any(not name for name in names):
            raise ValueError(f"malformed order {text!r}")
        if fact is not None and names and names[0] == fact:
            names = names[1:]
        return cls(tuple(names), fact)


@dataclass(frozen=True)
class Framework:
    """Arguments, three-valued attacks, and optional claim/value labels.

    ``attacks`` stores only settled edges (Present or Absent); any pair not in
    the mapping is Unknown. Labelling is all-or-nothing per kind: either every
    argument has a claim or none does, and likewise for values.
    """

    arguments: tuple[str, ...]
    attacks: Mapping[tuple[str, str], AttackStatus] = field(default_factory=dict)
    claims: Mapping[str, Formula] = field(default_factory=dict)
    values: Mapping[str, str] = field(default_factory=dict)
    declared_values: tuple[str, ...] = ()
    fact_value: str | None = None
    declared_order: ValueOrder | None = None

    def __post_init__(self):
        ids = set(self.arguments)
        if len(ids) != len(self.arguments):
            raise ValueError("duplicate argument ids")
        for (a, b), status in self.attacks.items():
            if a not in ids or b not in ids:
                raise UnknownArgumentError(f"attack {a}->{b} references undeclared argument")
            if status is AttackStatus.UNKNOWN:
                raise ValueError("store only settled attack statuses")
        if self.claims and set(self.claims) != ids:
            missing = sorted(ids - set(self.claims))
            raise LabellingError(f"arguments without claims: {missing}")
        if self.values and set(self.values) != ids:
            missing = sorted(ids - set(self.values))
            raise LabellingError(f"arguments without values: {missing}")
        declared = set(self.declared_values)
        if self.fact_value is not None:
            if self.fact_value in declared:
                raise ValueError("fact value must not be listed among ordinary values")
            declared.add(self.fact_value)
        for arg, value in self.values.items():
            if value not in declared:
                raise LabellingError(f"argument {arg!r} uses undeclared value {value!r}")

    # -- queries ----------------------------------------------------------

    @property
    def claim_labelled(self) -> bool:
        return bool(self.claims)

    @property
    def value_labelled(self) -> bool:
        return bool(self.values)

    def check_arguments(self, ids: Iterable[str]) -> None:
        known = set(self.arguments)
        for a in ids:
            if a not in known:
                raise UnknownArgumentError(f"unknown argument {a!r}")

    def status(self, attacker: str, target: str) -> AttackStatus:
        self.check_arguments((attacker, target))
        return self.attacks.get((attacker, target), AttackStatus.UNKNOWN)

    def present_attacks(self) -> list[tuple[str, str]]:
        index = {a: i for i, a in enumerate(self.arguments)}
        pairs = [e for e, s in self.attacks.items() if s is AttackStatus.PRESENT]
        pairs.sort(key=lambda e: (index[e[0]], index[e[1]]))
        return pairs

    @cached_property
    def _attackers(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {a: [] for a in self.arguments}
        for a, b in self.present_attacks():
            out[b].append(a)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def _targets(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {a: [] for a in self.arguments}
        for a, b in self.present_attacks():
            out[a].append(b)
        return {k: tuple(v) for k, v in out.items()}

    def attackers_of(self, target: str) -> tuple[str, ...]:
        self.check_arguments((target,))
        return self._attackers[target]

    def targets_of(self, attacker: str) -> tuple[str, ...]:
        self.check_arguments((attacker,))
        return self._targets[attacker]

    def is_fact(self, arg: str) -> bool:
        return self.fact_value is not None and self.values.get(arg) == self.fact_value

    def used_values(self) -> tuple[str, ...]:
        seen = []
        for arg in self.arguments:
            v = self.values.get(arg)
            if v is not None and v not in seen:
                seen.append(v)
        return tuple(seen)

    def require_value_labels(self) -> None:
        if not self.value_labelled:
            raise LabellingError("operation requires a fully value-labelled framework")

    def require_claim_labels(self) -> None:
        if not self.claim_labelled:
            raise LabellingError("operation requires a fully claim-labelled framework")

    # -- derivation helpers ------------------------------------------------

    def with_attacks(self, statuses: Mapping[tuple[str, str], AttackStatus]) -> "Framework":
        """A copy whose settled edges are exactly the given mapping."""
        cleaned = {e: s for e, s in statuses.items() if s is not AttackStatus.UNKNOWN}
        return replace(self, attacks=cleaned)

    def with_added_arguments(
        self, additions: Iterable[tuple[str, Formula | None, str | None]]
    ) -> "Framework":
        """Append fresh arguments (id, claim, value); attacks are untouched."""
        new_args = list(self.arguments)
        claims = dict(self.claims)
        values = dict(self.values)
        for arg_id, claim, value in additions:
            new_args.append(arg_id)
            if claim is not None:
                claims[arg_id] = claim
            if value is not None:
                values[arg_id] = value
        return replace(
            self,
            arguments=tuple(new_args),
            claims=claims,
            values=values,
        )


def build_framework(
    arguments: Iterable[str],
    attacks: Iterable[tuple[str, str]] = (),
    *,
    non_attacks: Iterable[tuple[str, str]] = (),
    claims: Mapping[str, str | Formula] | None = None,
    values: Mapping[str, str] | None = None,
    declared_values: Iterable[str] | None = None,
    fact_value: str | None = None,
    declared_order: ValueOrder | None = None,
) -> Framework:
    """Convenience constructor used by tests and internal builders.

    Claims may be given as concrete syntax strings; declared values default to
    the distinct values in use, in first-use order.
    """
    from .formula import parse_formula

    arguments = tuple(arguments)
    statuses: dict[tuple[str, str], AttackStatus] = {}
    for edge in attacks:
        statuses[tuple(edge)] = AttackStatus.PRESENT
    for edge in non_attacks:
        statuses[tuple(edge)] = AttackStatus.ABSENT
    parsed_claims: dict[str, Formula] = {}
    for arg, claim in (claims or {}).items():
        parsed_claims[arg] = claim if isinstance(claim, Formula) else parse_formula(claim)
    values = dict(values or {})
    if declared_values is None:
        seen: list[str] = []
        for arg in arguments:
            v = values.get(arg)
            if v is not None and v != fact_value and v not in seen:
                seen.append(v)
        declared_values = seen
    return Framework(
        arguments=tuple(arguments),
        attacks=statuses,
        claims=parsed_claims,
        values=values,
        declared_values=tuple(declared_values),
        fact_value=fact_value,
        declared_order=declared_order,
    )
