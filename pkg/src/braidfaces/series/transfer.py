"""Bivariate generating functions of shadows with prescribed start and end,
computed exactly by a transfer matrix over partition states, plus a direct
enumeration used as an independent check."""

from __future__ import annotations

import functools
import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.ring_series import rs_mul, rs_series_inversion, rs_trunc
from sympy.polys.rings import ring

from .shades import (
    check_set,
    comp,
    components,
    end,
    is_shade,
    normalize,
    reach,
    start,
    state_successors,
    top,
)
from .truncated import TruncSeries

X, Y = sympy.symbols("X Y")
_XY, _rx, _ry = ring("X,Y", QQ)
FIELD = QQ.frac_field(X, Y)


@dataclass(frozen=True)
class BiRat:
    """``num / den`` with ``num, den`` in ``QQ[X, Y]`` and ``den(0, Y)`` a nonzero constant."""

    num: sympy.Poly
    den: sympy.Poly

    @classmethod
    def from_expr(cls, expr) -> BiRat:
        num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
        num, den = sympy.Poly(num, X, Y, domain="QQ"), sympy.Poly(den, X, Y, domain="QQ")
        c = den.subs(X, 0)
        c = sympy.Poly(c, Y, domain="QQ") if not isinstance(c, sympy.Poly) else c
        if c.degree() > 0 or c.is_zero:
            raise ValueError(f"denominator {den.as_expr()} is not invertible as a series in X")
        lead = c.LC()
        return cls(num.quo_ground(lead), den.quo_ground(lead))

    @classmethod
    def from_field(cls, el) -> BiRat:
        return cls.from_expr(FIELD.to_sympy(el))

    @property
    def expr(self):
        return self.num.as_expr() / self.den.as_expr()

    def __add__(self, other: BiRat) -> BiRat:
        return BiRat.from_expr(self.expr + other.expr)

    def __str__(self) -> str:
        n, d = self.num.as_expr(), self.den.as_expr()
        return str(n) if d == 1 else f"({n})/({d})"

    def integer_form(self) -> str:
        """Reduced fraction with integer-coefficient numerator and denominator."""
        _, num = self.num.clear_denoms()
        _, den = self.den.clear_denoms()
        num, den = sympy.fraction(sympy.cancel(num.as_expr() / den.as_expr()))
        return f"({sympy.expand(num)})/({sympy.expand(den)})"

    def expand(self, N: int) -> dict[tuple[int, int], Fraction]:
        """Coefficients of ``X^a Y^b`` for ``a <= N``."""
        num = _XY(self.num.as_expr())
        den = _XY(self.den.as_expr())
        p = rs_mul(num, rs_series_inversion(den, _rx, N + 1), _rx, N + 1)
        return {k: Fraction(int(c.numerator), int(c.denominator)) for k, c in rs_trunc(p, _rx, N + 1).terms()}

    def evaluate(self, Xs: list[TruncSeries], Ys: list[TruncSeries]) -> TruncSeries:
        """Substitute series for X and Y, given their precomputed powers."""
        return _eval_poly(self.num, Xs, Ys) * _eval_poly(self.den, Xs, Ys).inverse()

    def degrees(self) -> tuple[int, int]:
        return (max(self.num.degree(X), self.den.degree(X)), max(self.num.degree(Y), self.den.degree(Y)))


def _eval_poly(P: sympy.Poly, Xs, Ys) -> TruncSeries:
    N = Xs[0].N
    acc = TruncSeries(N)
    for (a, b), c in P.terms():
        if a > N and Xs[1].first_nonzero() not in (None, 0):
            continue
        acc = acc + Xs[a] * Ys[b] * Fraction(int(c.p), int(c.q))
    return acc


def powers(s: TruncSeries, k: int) -> list[TruncSeries]:
    out = [TruncSeries.const(s.N, 1)]
    for _ in range(k):
        out.append(out[-1] * s)
    return out


# ---------------------------------------------------------------------------


def connection_set(S, V: Iterable[int], W: Iterable[int]) -> frozenset[int]:
    S = check_set(S)
    m = top(S)
    left, right = {0, *V}, {0, *W}
    return frozenset({0}) | frozenset(
        s for s in range(1, m + 1) if any(s + d + e in S for d in left for e in right)
    )


def connection_poly(S, V: Iterable[int], W: Iterable[int]) -> sympy.Poly:
    return sympy.Poly(sum(Y**s for s in connection_set(S, V, W)), Y, domain="QQ")


def subsets(m: int) -> list[frozenset[int]]:
    inner = range(1, m)
    return [frozenset(c) for r in range(max(m, 1)) for c in itertools.combinations(inner, r)]


@dataclass(frozen=True)
class _Transfer:
    states: tuple
    index: dict
    system: DomainMatrix  # Id - A over QQ(X, Y)


@functools.lru_cache(maxsize=None)
def _transfer(S: frozenset[int]) -> _Transfer:
    m = top(S)
    seeds = set()
    for U in subsets(m):
        DU = frozenset({0} | U)
        if not is_shade(S, DU):
            continue
        for d in _first_steps(S, U):
            seeds.add(comp(S, DU | {max(DU) + d}))
        seeds.add(comp(S, DU))
    states, frontier = set(seeds), list(seeds)
    while frontier:
        st = frontier.pop()
        for _, nxt in state_successors(S, st):
            if nxt not in states:
                states.add(nxt)
                frontier.append(nxt)
    order = tuple(sorted(states))
    index = {st: k for k, st in enumerate(order)}
    M = sympy.eye(len(order))
    for st in order:
        for d, nxt in state_successors(S, st):
            M[index[st], index[nxt]] -= X * Y**d
    return _Transfer(order, index, DomainMatrix.from_Matrix(M).convert_to(FIELD))


def _first_steps(S: frozenset[int], U: frozenset[int]) -> range:
    m = top(S)
    DU = frozenset({0} | U)
    r = reach(comp(S, DU))
    low = max(1, m - max(DU))
    return range(low, m - r + 1)


@functools.lru_cache(maxsize=None)
def _paths_to(S: frozenset[int], target) -> dict:
    """Generating function of paths from each state to ``target``: column of (Id - A)^-1."""
    tr = _transfer(S)
    if target not in tr.index:
        return {}
    size = len(tr.states)
    rhs = DomainMatrix([[FIELD.one if k == tr.index[target] else FIELD.zero] for k in range(size)], (size, 1), FIELD)
    sol = tr.system.lu_solve(rhs)
    return {st: sol[k, 0].element for st, k in tr.index.items()}


@functools.lru_cache(maxsize=None)
def _shadow_rational(S: frozenset[int], U: frozenset[int], V: frozenset[int]) -> BiRat:
    m = top(S)
    DU = frozenset({0} | U)
    if not is_shade(S, DU):
        return BiRat.from_expr(sympy.Integer(0))
    x, y = FIELD.from_sympy(X), FIELD.from_sympy(Y)
    direct = FIELD.one if len(components(S, DU)) == 1 and end(S, DU) == V else FIELD.zero
    to_target = _paths_to(S, normalize([{0} | V]))
    walk = FIELD.zero
    for d in _first_steps(S, U):
        st = comp(S, DU | {max(DU) + d})
        walk += y**d * to_target.get(st, FIELD.zero)
    return BiRat.from_field(x ** (1 + len(U)) * y ** max(DU) * (direct + x * walk))


def shadow_rational(S, U: Iterable[int], V: Iterable[int]) -> BiRat:
    S = check_set(S)
    m = top(S)
    U, V = frozenset(U), frozenset(V)
    for name, part in (("U", U), ("V", V)):
        if not part <= frozenset(range(1, m)):
            raise ValueError(f"{name} = {sorted(part)} is not a subset of [1, {m - 1}]")
    return _shadow_rational(S, U, V)


def shades_upto(S, N: int) -> list[frozenset[int]]:
    """All shades of at most N elements, grown by one element at a time and
    filtered with the direct shade test."""
    S = check_set(S)
    m = top(S)
    out, layer = [], [frozenset({0})]
    while layer:
        out.extend(layer)
        nxt = []
        for D in layer:
            if len(D) >= N:
                continue
            hi = max(D)
            for d in range(1, m + 1):
                E = D | {hi + d}
                if is_shade(S, E):
                    nxt.append(E)
        layer = nxt
    return out


def shadow_series(S, U: Iterable[int], V: Iterable[int], N: int) -> dict[tuple[int, int], int]:
    """Sum of ``X^|D| Y^max(D)`` over shadows with the given start and end, ``|D| <= N``."""
    S = check_set(S)
    U, V = frozenset(U), frozenset(V)
    out: dict[tuple[int, int], int] = defaultdict(int)
    for D in shades_upto(S, N):
        if len(components(S, D)) == 1 and start(S, D) == U and end(S, D) == V:
            out[(len(D), max(D))] += 1
    return dict(out)
