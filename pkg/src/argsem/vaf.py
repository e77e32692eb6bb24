"""Value-relative semantics: defeats, order enumeration, chains, and the
objective / subjective / indefensible classification.

Two classifiers are provided. ``classify_by_enumeration`` runs the extension
machinery once per total value order and reads acceptability off the preferred
extensions. ``classify_by_paths`` never builds an extension: it decomposes the
graph into same-value chains and assigns each argument one of five structural
paths. On dichromatic frameworks the two must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable

from . import af
from .errors import EnumerationCapError, LabellingError, ShapeError
from .framework import AttackStatus, Framework, ValueOrder

MAX_ORDER_VALUES = 8

OBJECTIVE = "objective"
SUBJECTIVE = "subjective"
INDEFENSIBLE = "indefensible"


def defeats(fw: Framework, order: ValueOrder, attacker: str, target: str) -> bool:
    """Present attack whose target's value is not strictly preferred."""
    fw.require_value_labels()
    if fw.status(attacker, target) is not AttackStatus.PRESENT:
        return False
    return not order.prefers(fw.values[target], fw.values[attacker])


def defeat_graph(fw: Framework, order: ValueOrder) -> Framework:
    """Same arguments and labels; Present attacks are exactly the defeats."""
    fw.require_value_labels()
    surviving = {
        edge: AttackStatus.PRESENT
        for edge in fw.present_attacks()
        if not order.prefers(fw.values[edge[1]], fw.values[edge[0]])
    }
    return fw.with_attacks(surviving)


def vaf_preferred_extensions(
    fw: Framework, order: ValueOrder, cap: int = af.DEFAULT_CAP
) -> list[frozenset[str]]:
    return af.preferred_extensions(defeat_graph(fw, order), cap)


def vaf_stable_extensions(
    fw: Framework, order: ValueOrder, cap: int = af.DEFAULT_CAP
) -> list[frozenset[str]]:
    return af.stable_extensions(defeat_graph(fw, order), cap)


def enumerate_orders(fw: Framework) -> list[ValueOrder]:
    """All strict total orders of the non-fact values, fact tier pinned on top.

    Enumeration is lexicographic over sorted value names so reports are stable.
    """
    fw.require_value_labels()
    names = sorted(fw.declared_values)
    if len(names) > MAX_ORDER_VALUES:
        raise EnumerationCapError(
            f"{len(names)} values exceed the order-enumeration cap of {MAX_ORDER_VALUES}"
        )
    if not names:
        if fw.fact_value is None:
            raise LabellingError("framework declares no values")
        return [ValueOrder((), fw.fact_value)]
    return [ValueOrder(perm, fw.fact_value) for perm in permutations(names)]


def order_for(fw: Framework, text: str) -> ValueOrder:
    """Parse a CLI-style order like ``D>C`` and check it against the framework."""
    order = ValueOrder.parse(text, fact=fw.fact_value)
    if sorted(order.ranking) != sorted(fw.declared_values):
        raise LabellingError(
            f"order {text!r} must rank exactly the values {sorted(fw.declared_values)}"
        )
    return order


# -- chains ------------------------------------------------------------------


@dataclass(frozen=True)
class Chain:
    """A maximal same-value attack sequence.

    Within a chain the only attacks among members are the predecessor edges;
    the first member has no attacker inside the chain; a member attacked from
    outside the chain is its last member.
    """

    value: str
    members: tuple[str, ...]

    def position_of(self, arg: str) -> int | None:
        if arg in self.members:
            return self.members.index(arg) + 1
        return None


@dataclass(frozen=True)
class ChainAnalysis:
    chains: tuple[Chain, ...]
    positions: dict[str, tuple[tuple[int, int], ...]]  # arg -> ((chain idx, 1-based pos), ...)
    parity: dict[str, str]  # "odd" | "even"
    predecessor_edges: frozenset[tuple[str, str]]

    def chains_of(self, arg: str) -> tuple[int, ...]:
        return tuple(ci for ci, _ in self.positions[arg])


def extract_chains(fw: Framework) -> ChainAnalysis:
    """Decompose a value-labelled framework into its maximal chains.

    An argument attacked by two or more same-value arguments closes every
    chain it ends and never continues one: its outgoing same-value edges are
    severed, so its victim opens a fresh chain. Self-attacks are ignored for
    chain structure. Every argument lands in at least one chain; parity is
    even when the argument is even-positioned in at least one chain.
    """
    fw.require_value_labels()
    args = fw.arguments
    index = {a: i for i, a in enumerate(args)}
    present = set(fw.present_attacks())

    def same_value_attackers(x: str) -> list[str]:
        return [y for y in fw.attackers_of(x) if y != x and fw.values[y] == fw.values[x]]

    severed = {y for y in args if len(same_value_attackers(y)) >= 2}
    usable_targets: dict[str, list[str]] = {a: [] for a in args}
    for a, b in sorted(present, key=lambda e: (index[e[0]], index[e[1]])):
        if a != b and a not in severed and fw.values[a] == fw.values[b]:
            usable_targets[a].append(b)

    leaves: set[tuple[str, ...]] = set()

    def extend(seq: list[str]) -> None:
        last = seq[-1]
        blocked = len(seq) >= 2 and any(
            y not in seq for y in fw.attackers_of(last) if y != last
        )
        grown = False
        if not blocked:
            for x in usable_targets[last]:
                if x in seq:
                    continue
                if any((m, x) in present for m in seq[:-1]):
                    continue  # a non-predecessor member may not attack x
                if any((x, m) in present for m in seq):
                    continue  # x may not attack the head or any member
                seq.append(x)
                extend(seq)
                seq.pop()
                grown = True
        if not grown:
            leaves.add(tuple(seq))

    for start in args:
        extend([start])

    def contiguous_in(short: tuple[str, ...], long: tuple[str, ...]) -> bool:
        if len(short) >= len(long):
            return False
        k = len(short)
        return any(long[i : i + k] == short for i in range(len(long) - k + 1))

    maximal = [s for s in leaves if not any(contiguous_in(s, t) for t in leaves)]
    maximal.sort(key=lambda s: tuple(index[m] for m in s))

    chains = tuple(Chain(fw.values[s[0]], s) for s in maximal)
    positions: dict[str, list[tuple[int, int]]] = {a: [] for a in args}
    pred_edges: set[tuple[str, str]] = set()
    for ci, chain in enumerate(chains):
        for pos, member in enumerate(chain.members, start=1):
            positions[member].append((ci, pos))
            if pos > 1:
                pred_edges.add((chain.members[pos - 2], member))
    parity = {
        a: "even" if any(pos % 2 == 0 for _, pos in positions[a]) else "odd"
        for a in args
    }
    return ChainAnalysis(
        chains=chains,
        positions={a: tuple(v) for a, v in positions.items()},
        parity=parity,
        predecessor_edges=frozenset(pred_edges),
    )


# -- classification ------------------------------------------------------------


@dataclass(frozen=True)
class ArgumentClassification:
    argument: str
    status: str
    witness_orders: tuple[ValueOrder, ...]
    path: int | None = None
    caoc: bool | None = None
    aaoc: bool | None = None


@dataclass(frozen=True)
class ClassificationReport:
    method: str
    orders: tuple[ValueOrder, ...]
    entries: dict[str, ArgumentClassification]
    chains: ChainAnalysis | None = None

    def objective(self) -> set[str]:
        return {a for a, e in self.entries.items() if e.status == OBJECTIVE}

    def indefensible(self) -> set[str]:
        return {a for a, e in self.entries.items() if e.status == INDEFENSIBLE}

    def subjective(self) -> set[str]:
        return {a for a, e in self.entries.items() if e.status == SUBJECTIVE}

    def subjective_only_under(self, order: ValueOrder) -> set[str]:
        """Subjective arguments whose witness set is exactly {order}."""
        return {
            a
            for a, e in self.entries.items()
            if e.status == SUBJECTIVE and e.witness_orders == (order,)
        }

    def acceptable_under(self, order: ValueOrder) -> set[str]:
        return {
            a
            for a, e in self.entries.items()
            if e.status == OBJECTIVE or order in e.witness_orders
        }


def _status_from_witnesses(witnesses: tuple[ValueOrder, ...], total: int) -> str:
    if len(witnesses) == total:
        return OBJECTIVE
    if not witnesses:
        return INDEFENSIBLE
    return SUBJECTIVE


def classify_by_enumeration(fw: Framework, cap: int = af.DEFAULT_CAP) -> ClassificationReport:
    """Acceptable under an order = member of some preferred extension of its
    defeat graph; objective/subjective/indefensible by quantifying over all
    total orders."""
    orders = tuple(enumerate_orders(fw))
    acceptable: dict[ValueOrder, set[str]] = {}
    for order in orders:
        extensions = vaf_preferred_extensions(fw, order, cap)
        acceptable[order] = set().union(*extensions) if extensions else set()
    entries = {}
    for arg in fw.arguments:
        witnesses = tuple(o for o in orders if arg in acceptable[o])
        entries[arg] = ArgumentClassification(
            argument=arg,
            status=_status_from_witnesses(witnesses, len(orders)),
            witness_orders=witnesses,
        )
    return ClassificationReport(method="enumerate", orders=orders, entries=entries)


def classify_by_paths(fw: Framework) -> ClassificationReport:
    """Structural classification for dichromatic frameworks via the five paths.

    Chain-predecessor edges never count as attacks here. An attack's parity is
    its attacker's parity (even when even-positioned in at least one chain).
    An argument's chain counts as attacked by an odd chain when its own head,
    or the argument itself, takes an odd attack from outside the chains.
    """
    fw.require_value_labels()
    ordinary = tuple(v for v in fw.declared_values)
    if len(ordinary) != 2:
        raise ShapeError(
            f"path classification requires exactly two ordinary values, got {list(ordinary)}"
        )
    analysis = extract_chains(fw)
    pred = analysis.predecessor_edges
    parity = analysis.parity

    def odd_attacked(x: str) -> bool:
        return any(
            parity[y] == "odd"
            for y in fw.attackers_of(x)
            if (y, x) not in pred
        )

    orders = tuple(enumerate_orders(fw))
    entries = {}
    for arg in fw.arguments:
        aaoc = odd_attacked(arg)
        caoc = aaoc or any(
            odd_attacked(analysis.chains[ci].members[0]) for ci in analysis.chains_of(arg)
        )
        if parity[arg] == "odd":
            path = 1 if not caoc else 2
        elif caoc:
            path = 3 if not aaoc else 4
        else:
            path = 5
        if path == 1:
            witnesses = orders
        elif path == 2:
            # Odd members stand when their own value is on top; a fact tier is
            # on top in every order.
            witnesses = orders if fw.is_fact(arg) else tuple(
                o for o in orders if o.ranking[0] == fw.values[arg]
            )
        elif path == 3:
            witnesses = () if fw.is_fact(arg) else tuple(
                o for o in orders if o.ranking[0] != fw.values[arg]
            )
        else:
            witnesses = ()
        entries[arg] = ArgumentClassification(
            argument=arg,
            status=_status_from_witnesses(witnesses, len(orders)),
            witness_orders=witnesses,
            path=path,
            caoc=caoc,
            aaoc=aaoc,
        )
    return ClassificationReport(
        method="paths", orders=orders, entries=entries, chains=analysis
    )


def dichromatic_cycle_preferred(fw: Framework, order: ValueOrder) -> frozenset[str]:
    """Preferred extension of a single dichromatic cycle of chains, computed
    structurally: objective members plus the subjective members whose witness
    order matches."""
    report = classify_by_paths(fw)
    _require_cycle_shape(fw, report.chains)
    if sorted(order.ranking) != sorted(fw.declared_values):
        raise LabellingError(f"order {order} does not rank the framework's values")
    chosen = {
        a
        for a, e in report.entries.items()
        if e.status == OBJECTIVE or order in e.witness_orders
    }
    return frozenset(chosen)


def _require_cycle_shape(fw: Framework, analysis: ChainAnalysis | None) -> None:
    assert analysis is not None
    if fw.fact_value is not None and any(fw.is_fact(a) for a in fw.arguments):
        raise ShapeError("cycle computation does not admit fact-valued arguments")
    if len(fw.used_values()) != 2:
        raise ShapeError("cycle computation requires both values in use")
    chain_count = len(analysis.chains)
    chain_of_member: dict[str, set[int]] = {a: set(analysis.chains_of(a)) for a in fw.arguments}
    edges: set[tuple[int, int]] = set()
    for ci, chain in enumerate(analysis.chains):
        head = chain.members[0]
        sources = [y for y in fw.attackers_of(head) if ci not in chain_of_member[y]]
        if not sources:
            raise ShapeError(f"chain {'/'.join(chain.members)} is not on the cycle")
        for y in sources:
            for cj in chain_of_member[y]:
                if cj != ci:
                    edges.add((cj, ci))

    def reachable(start: int, adjacency: dict[int, set[int]]) -> set[int]:
        seen = {start}
        frontier = [start]
        while frontier:
            node = frontier.pop()
            for nxt in adjacency.get(node, ()):
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return seen

    forward: dict[int, set[int]] = {}
    backward: dict[int, set[int]] = {}
    for a, b in edges:
        forward.setdefault(a, set()).add(b)
        backward.setdefault(b, set()).add(a)
    everything = set(range(chain_count))
    if reachable(0, forward) != everything or reachable(0, backward) != everything:
        raise ShapeError("chains do not form a single cycle")
