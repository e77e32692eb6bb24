"""Extension semantics over plain attack graphs.

Only Present edges count here. The primary enumerators walk conflict-free
sets with pruning; the ``*_bruteforce`` twins re-derive the same answers by a
flat scan over all subsets, applying the definitions one set at a time. The
slow twins exist so every fast path can be cross-checked, and they are kept
free of shared machinery on purpose.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .errors import EnumerationCapError
from .framework import AttackStatus, Framework

DEFAULT_CAP = 22


def _check_cap(fw: Framework, cap: int) -> None:
    if len(fw.arguments) > cap:
        raise EnumerationCapError(
            f"{len(fw.arguments)} arguments exceed the enumeration cap of {cap}"
        )


def is_conflict_free(fw: Framework, s: Iterable[str]) -> bool:
    """No Present attack has both endpoints in s."""
    members = set(s)
    fw.check_arguments(members)
    return not any(b in members for a in members for b in fw.targets_of(a))


def is_acceptable(fw: Framework, argument: str, s: Iterable[str]) -> bool:
    """Every attacker of the argument is attacked by some member of s."""
    members = set(s)
    fw.check_arguments(members | {argument})
    attacked_by_s = {b for a in members for b in fw.targets_of(a)}
    return all(attacker in attacked_by_s for attacker in fw.attackers_of(argument))


def is_admissible(fw: Framework, s: Iterable[str]) -> bool:
    """Conflict-free and every member is acceptable with respect to s."""
    members = set(s)
    return is_conflict_free(fw, members) and all(
        is_acceptable(fw, a, members) for a in members
    )


def sort_extensions(extensions: Iterable[frozenset[str]]) -> list[frozenset[str]]:
    """Deterministic report order: size descending, then lexicographic ids."""
    return sorted(extensions, key=lambda e: (-len(e), tuple(sorted(e))))


def _conflict_free_sets(fw: Framework) -> list[frozenset[str]]:
    """All conflict-free sets, found by ordered search with conflict pruning."""
    args = fw.arguments
    n = len(args)
    index = {a: i for i, a in enumerate(args)}
    conflicts: list[set[int]] = [set() for _ in range(n)]
    for a, b in fw.present_attacks():
        conflicts[index[a]].add(index[b])
        conflicts[index[b]].add(index[a])
    results: list[frozenset[str]] = []
    chosen: list[int] = []

    def extend(start: int) -> None:
        results.append(frozenset(args[i] for i in chosen))
        for i in range(start, n):
            if i in conflicts[i]:
                continue  # self-attacker can never join a conflict-free set
            if any(i in conflicts[j] for j in chosen):
                continue
            chosen.append(i)
            extend(i + 1)
            chosen.pop()

    extend(0)
    return results


def admissible_sets(fw: Framework, cap: int = DEFAULT_CAP) -> list[frozenset[str]]:
    _check_cap(fw, cap)
    out = []
    for s in _conflict_free_sets(fw):
        attacked_by_s = {b for a in s for b in fw.targets_of(a)}
        if all(set(fw.attackers_of(a)) <= attacked_by_s for a in s):
            out.append(s)
    return sort_extensions(out)


def preferred_extensions(fw: Framework, cap: int = DEFAULT_CAP) -> list[frozenset[str]]:
    """All maximal admissible sets, as an antichain in deterministic order."""
    admissible = admissible_sets(fw, cap)
    maximal = [
        s
        for s in admissible
        if not any(s < t for t in admissible)
    ]
    return sort_extensions(maximal)


def stable_extensions(fw: Framework, cap: int = DEFAULT_CAP) -> list[frozenset[str]]:
    """All conflict-free sets attacking every outside argument."""
    _check_cap(fw, cap)
    everyone = set(fw.arguments)
    out = []
    for s in _conflict_free_sets(fw):
        attacked_by_s = {b for a in s for b in fw.targets_of(a)}
        if everyone - s <= attacked_by_s:
            out.append(s)
    return sort_extensions(out)


# -- independent oracles ----------------------------------------------------


def _all_subsets(fw: Framework) -> Iterable[frozenset[str]]:
    for size in range(len(fw.arguments) + 1):
        for combo in combinations(fw.arguments, size):
            yield frozenset(combo)


def preferred_extensions_bruteforce(fw: Framework, cap: int = DEFAULT_CAP) -> list[frozenset[str]]:
    """Full subset scan: filter admissible by definition, keep maximal."""
    _check_cap(fw, cap)
    admissible = [s for s in _all_subsets(fw) if is_admissible(fw, s)]
    maximal = [s for s in admissible if not any(s < t for t in admissible)]
    return sort_extensions(maximal)


def stable_extensions_bruteforce(fw: Framework, cap: int = DEFAULT_CAP) -> list[frozenset[str]]:
    """Full subset scan applying the stable condition literally."""
    _check_cap(fw, cap)
    out = []
    for s in _all_subsets(fw):
        if not is_conflict_free(fw, s):
            continue
        outside = set(fw.arguments) - s
        if all(any(fw.status(a, b) is AttackStatus.PRESENT for a in s) for b in outside):
            out.append(s)
    return sort_extensions(out)
