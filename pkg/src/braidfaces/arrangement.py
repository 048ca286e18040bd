"""Braid-type hyperplane arrangements.

Every hyperplane has the form ``{x_i - x_j = s}`` with integer ``s``.  Each one
is stored as a canonical triple ``(i, j, s)`` with ``0 <= s`` and ``i > j`` when
``s == 0``; ``{x_i - x_j = s}`` and ``{x_j - x_i = -s}`` are the same
hyperplane.  Labels are 1-based.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Triple = tuple[int, int, int]


class ArrangementError(ValueError):
    pass


def canonical(i: int, j: int, s: int) -> Triple:
    """Return the canonical triple of the hyperplane ``{x_i - x_j = s}``."""
    if i == j:
        raise ArrangementError(f"degenerate hyperplane x_{i} - x_{j} = {s}")
    if s < 0 or (s == 0 and i < j):
        return (j, i, -s)
    return (i, j, s)


def is_canonical(i: int, j: int, s: int) -> bool:
    return i != j and s >= 0 and (s > 0 or i > j)


@dataclass(frozen=True)
class Arrangement:
    n: int
    triples: frozenset[Triple] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ArrangementError(f"negative dimension {self.n}")
        normalized = set()
        for i, j, s in self.triples:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ArrangementError(f"label out of range in {(i, j, s)} for n={self.n}")
            normalized.add(canonical(i, j, s))
        object.__setattr__(self, "triples", frozenset(normalized))

    @classmethod
    def from_hyperplanes(cls, n: int, hyperplanes: Iterable[tuple[int, int, int]]) -> Arrangement:
        return cls(n, frozenset(canonical(i, j, s) for i, j, s in hyperplanes))

    @cached_property
    def m(self) -> int:
        return max((s for _, _, s in self.triples), default=0)

    @cached_property
    def sorted_triples(self) -> tuple[Triple, ...]:
        return tuple(sorted(self.triples))

    def __len__(self) -> int:
        return len(self.triples)

    def __contains__(self, triple) -> bool:
        return self.contains(*triple)

    def contains(self, i: int, j: int, s: int) -> bool:
        """Whether ``{x_i - x_j = s}`` belongs to the arrangement (any sign of s)."""
        if i == j:
            return False
        return canonical(i, j, s) in self.triples

    def issubset(self, other: Arrangement) -> bool:
        return self.n == other.n and self.triples <= other.triples

    def __repr__(self) -> str:
        return f"Arrangement(n={self.n}, triples={list(self.sorted_triples)})"

    def to_json(self) -> dict:
        return {"n": self.n, "triples": [list(t) for t in self.sorted_triples]}

    @classmethod
    def from_json(cls, data: dict | str) -> Arrangement:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n = int(data["n"])
            raw = [tuple(int(v) for v in t) for t in data["triples"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ArrangementError(f"malformed arrangement JSON: {exc}") from None
        if any(len(t) != 3 for t in raw):
            raise ArrangementError("every triple needs exactly three integers")
        return cls.from_hyperplanes(n, raw)


# ---------------------------------------------------------------------------
# families


def from_set(S: Iterable[int], n: int) -> Arrangement:
    """The arrangement of all ``{x_i - x_j = s}`` with ``i < j`` and ``s`` in S."""
    S = set(S)
    return Arrangement.from_hyperplanes(
        n, ((i, j, s) for i, j in itertools.combinations(range(1, n + 1), 2) for s in S)
    )


def braid(n: int) -> Arrangement:
    return from_set({0}, n)


def catalan(m: int, n: int) -> Arrangement:
    _check_nonneg(m)
    return from_set(range(-m, m + 1), n)


def shi(m: int, n: int) -> Arrangement:
    _check_nonneg(m)
    return from_set(range(-m + 1, m + 1), n)


def semiorder(m: int, n: int) -> Arrangement:
    _check_nonneg(m)
    return from_set(set(range(-m, m + 1)) - {0}, n)


def linial(n: int) -> Arrangement:
    return from_set({1}, n)


def ideal_arrangement(m: int, I: Ideal | Iterable[tuple[int, int]], n: int) -> Arrangement:
    """``A_{m-1}`` together with ``{x_i - x_j = m}`` for every pair of the ideal."""
    if m < 1:
        raise ArrangementError(f"ideal arrangements need m >= 1, got {m}")
    if not isinstance(I, Ideal):
        I = Ideal(n, frozenset(map(tuple, I)))
    if I.n != n:
        raise ArrangementError(f"ideal lives on [{I.n}], arrangement on [{n}]")
    base = catalan(m - 1, n)
    return Arrangement(n, base.triples | {canonical(i, j, m) for i, j in I.pairs})


def multi_catalan(mvec: Sequence[int]) -> Arrangement:
    """Hyperplanes ``{x_i - x_j = s}`` for ``i < j`` and ``-m_i <= s <= m_j``."""
    if any(v < 0 for v in mvec):
        raise ArrangementError(f"negative entry in {tuple(mvec)}")
    n = len(mvec)
    return Arrangement.from_hyperplanes(
        n,
        (
            (i, j, s)
            for i, j in itertools.combinations(range(1, n + 1), 2)
            for s in range(-mvec[i - 1], mvec[j - 1] + 1)
        ),
    )


def _check_nonneg(m):
    if m < 0:
        raise ArrangementError(f"m must be non-negative, got {m}")


# ---------------------------------------------------------------------------
# transitivity


def is_transitive(A: Arrangement) -> bool:
    m, n = A.m, A.n
    for i, j, k in itertools.permutations(range(1, n + 1), 3):
        for s in range(m + 1):
            if not is_canonical(i, j, s) or A.contains(i, j, s):
                continue
            for t in range(m + 1):
                if not is_canonical(j, k, t) or A.contains(j, k, t):
                    continue
                if A.contains(i, k, s + t):
                    return False
    return True


def is_strongly_transitive(A: Arrangement) -> bool:
    # offsets above A.m are never present, and neither is their sum
    m, n = A.m, A.n
    for i, j, k in itertools.permutations(range(1, n + 1), 3):
        for s in range(m + 1):
            if A.contains(i, j, s):
                continue
            for t in range(m + 1 - s):
                if not A.contains(j, k, t) and A.contains(i, k, s + t):
                    return False
    return True


def set_condition(S: Iterable[int]) -> bool:
    """Whether every ``A_S^n`` is strongly transitive, decided on S alone."""
    S = set(S)
    if not S:
        return True
    bound = 2 * max(abs(s) for s in S) + 1
    outside = [v for v in range(-bound, bound + 1) if v not in S]
    for s in outside:
        for t in outside:
            if s * t >= 0 and s + t in S:
                return False
            if s * t <= 0 and (s - t in S or t - s in S):
                return False
    return True


def permute(A: Arrangement, perm: Sequence[int]) -> Arrangement:
    """Image of A under the coordinate permutation ``i -> perm[i-1]``."""
    if sorted(perm) != list(range(1, A.n + 1)):
        raise ArrangementError(f"{tuple(perm)} is not a permutation of [{A.n}]")
    return Arrangement.from_hyperplanes(A.n, ((perm[i - 1], perm[j - 1], s) for i, j, s in A.triples))


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class Ideal:
    """Up-closed set of ordered pairs: (i, j) in I, i' <= i, j' >= j  =>  (i', j') in I."""

    n: int
    pairs: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        pairs = frozenset((int(i), int(j)) for i, j in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        for i, j in pairs:
            if i == j or not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ArrangementError(f"invalid pair {(i, j)} for n={self.n}")
        for i, j in pairs:
            for i2 in range(1, i + 1):
                for j2 in range(j, self.n + 1):
                    if i2 != j2 and (i2, j2) not in pairs:
                        raise ArrangementError(
                            f"not an ideal: contains {(i, j)} but not {(i2, j2)}"
                        )

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    @classmethod
    def full(cls, n: int) -> Ideal:
        return cls(n, frozenset((i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j))

    @classmethod
    def positive(cls, n: int) -> Ideal:
        return cls(n, frozenset(itertools.combinations(range(1, n + 1), 2)))


def ideal_chain(n: int) -> list[Ideal]:
    """A maximal chain of ideals from the empty set to all pairs, one pair per step.

    Pairs are added by increasing ``i - j`` (ties by increasing ``i``), so the
    ``n(n-1)/2``-th ideal is the set of pairs with ``i < j``.
    """
    if n < 1:
        raise ArrangementError(f"n must be positive, got {n}")
    order = sorted(
        ((i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j),
        key=lambda p: (p[0] - p[1], p[0]),
    )
    chain = [Ideal(n)]
    for k in range(len(order)):
        chain.append(Ideal(n, frozenset(order[: k + 1])))
    return chain
