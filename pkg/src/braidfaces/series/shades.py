"""Shadows and shades: finite sets D of naturals containing 0, viewed as graphs
with an edge between i and j whenever i - j lies in S.

A shade is a set all of whose components reach the top window
``[max(D) - m + 1, max(D)]``; a shadow is a connected shade.  Shades grow one
element at a time, and the component structure near the top is tracked by a
partition state on ``{0} | V`` with ``V`` a subset of ``[m-1]`` (distances below
the current maximum).
"""

from __future__ import annotations

import itertools
from typing import Iterable

PartitionState = tuple[tuple[int, ...], ...]


class SeriesConditionError(ValueError):
    pass


def check_set(S: Iterable[int]) -> frozenset[int]:
    """Validate that S is symmetric and that no two naturals outside S sum into S."""
    S = frozenset(int(s) for s in S)
    if not S:
        raise SeriesConditionError("S must be nonempty")
    if S != frozenset(-s for s in S):
        raise SeriesConditionError(f"S = {sorted(S)} is not symmetric")
    m = max(S)
    outside = [v for v in range(m + 1) if v not in S]
    for s, t in itertools.combinations_with_replacement(outside, 2):
        if s + t in S:
            raise SeriesConditionError(f"{s} and {t} lie outside S but {s + t} is in S")
    return S


def top(S: frozenset[int]) -> int:
    return max(S)


def components(S: frozenset[int], D: Iterable[int]) -> list[frozenset[int]]:
    D = sorted(set(D))
    seen: set[int] = set()
    out = []
    for v in D:
        if v in seen:
            continue
        comp, stack = {v}, [v]
        while stack:
            a = stack.pop()
            for b in D:
                if b not in comp and (a - b) in S:
                    comp.add(b)
                    stack.append(b)
        seen |= comp
        out.append(frozenset(comp))
    return out


def _valid(D) -> frozenset[int]:
    D = frozenset(D)
    if 0 not in D or min(D) < 0:
        raise ValueError(f"{sorted(D)} must be a set of naturals containing 0")
    return D


def is_shadow(S, D) -> bool:
    S = check_set(S)
    return len(components(S, _valid(D))) == 1


def is_shade(S, D) -> bool:
    S = check_set(S)
    D = _valid(D)
    hi = max(D)
    lo = hi - max(top(S), 1) + 1
    return all(any(lo <= v <= hi for v in c) for c in components(S, D))


def start(S, D) -> frozenset[int]:
    m = top(frozenset(S))
    return frozenset(v for v in D if 1 <= v <= m - 1)


def end(S, D) -> frozenset[int]:
    m = top(frozenset(S))
    hi = max(D)
    return frozenset(hi - v for v in D if 1 <= hi - v <= m - 1)


def normalize(blocks: Iterable[Iterable[int]]) -> PartitionState:
    return tuple(sorted(tuple(sorted(b)) for b in blocks if b))


def comp(S, D) -> PartitionState:
    """Partition of ``{0} | end(D)`` by components of the graph of D."""
    S = frozenset(S)
    hi = max(D)
    window = {0} | end(S, D)
    return normalize(
        [hi - v for v in c if hi - v in window] for c in components(S, D)
    )


def reach(state: PartitionState) -> int:
    return max(min(b) for b in state)


def shade_successors(S, D) -> list[frozenset[int]]:
    S = check_set(S)
    D = frozenset(D)
    if not is_shade(S, D):
        raise ValueError(f"{sorted(D)} is not a shade")
    r = reach(comp(S, D))
    hi = max(D)
    return [D | {hi + d} for d in range(1, top(S) - r + 1)]


def state_successors(S: frozenset[int], state: PartitionState) -> list[tuple[int, PartitionState]]:
    """Pairs ``(d, state')`` for adding a new maximum ``d`` above the current one."""
    m = top(S)
    out = []
    for d in range(1, m - reach(state) + 1):
        joined = {0}
        rest = []
        for b in state:
            shifted = [v + d for v in b]
            if any(v in S for v in shifted):
                joined.update(v for v in shifted if v <= m - 1)
            else:
                rest.append([v for v in shifted if v <= m - 1])
        out.append((d, normalize([joined] + rest)))
    return out


def all_states(m: int) -> list[PartitionState]:
    """Every partition of ``{0} | V`` for ``V`` a subset of ``[m-1]``."""
    from ..lattice import set_partitions

    out = []
    inner = list(range(1, m))
    for r in range(len(inner) + 1):
        for V in itertools.combinations(inner, r):
            elems = (0,) + V
            for part in set_partitions(len(elems)):
                out.append(normalize([[elems[i - 1] for i in b] for b in part]))
    return out
