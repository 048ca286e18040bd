"""Exact truncated power series in x with polynomial coefficients in u.

Series are stored by their ordinary coefficients ``f_n`` (so ``F = sum f_n x^n``)
as one element of ``QQ[x, u]``; :meth:`TruncSeries.egf` returns ``n! f_n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from sympy.polys.domains import QQ
from sympy.polys.ring_series import rs_exp, rs_mul, rs_series_inversion, rs_trunc
from sympy.polys.rings import ring

RING, x, u = ring("x,u", QQ)
Scalar = Union[int, Fraction]


def _frac(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


@dataclass(frozen=True)
class UPoly:
    """Polynomial in u with rational coefficients, lowest degree first."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def of(cls, *coeffs: Scalar) -> UPoly:
        return cls(tuple(coeffs))

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("u" if k == 1 else f"u^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono:
                terms.append(f"{c}*{mono}")
            else:
                terms.append(str(c))
        return " + ".join(terms)


class TruncSeries:
    """Power series in x known up to and including ``x^N``."""

    __slots__ = ("N", "p")

    def __init__(self, N: int, p=None):
        self.N = N
        self.p = RING.zero if p is None else rs_trunc(RING(p), x, N + 1)

    # -- construction ------------------------------------------------------

    @classmethod
    def const(cls, N: int, c) -> TruncSeries:
        return cls(N, RING(c))

    @classmethod
    def var(cls, N: int) -> TruncSeries:
        return cls(N, x)

    @classmethod
    def exp(cls, N: int, scale=1) -> TruncSeries:
        """``exp(scale * x)``; ``scale`` may involve u."""
        return cls(N, rs_exp(RING(scale) * x, x, N + 1))

    @classmethod
    def from_egf(cls, N: int, coeffs: Iterable[UPoly]) -> TruncSeries:
        p = RING.zero
        for n, c in enumerate(coeffs):
            if n > N:
                break
            for k, a in enumerate(c.coeffs):
                p += RING(QQ(a.numerator, a.denominator) / math.factorial(n)) * x**n * u**k
        return cls(N, p)

    # -- arithmetic --------------------------------------------------------

    def _lift(self, other) -> TruncSeries:
        if isinstance(other, TruncSeries):
            if other.N != self.N:
                raise ValueError(f"order mismatch {self.N} vs {other.N}")
            return other
        if isinstance(other, Fraction):
            other = QQ(other.numerator, other.denominator)
        return TruncSeries(self.N, RING(other))

    def __add__(self, other):
        return TruncSeries(self.N, self.p + self._lift(other).p)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.N, -self.p)

    def __sub__(self, other):
        return TruncSeries(self.N, self.p - self._lift(other).p)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return TruncSeries(self.N, rs_mul(self.p, o.p, x, self.N + 1))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = TruncSeries.const(self.N, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> TruncSeries:
        c0 = rs_trunc(self.p, x, 1)
        if not c0.is_ground or c0 == 0:
            raise ZeroDivisionError("series constant term must be a nonzero number")
        return TruncSeries(self.N, rs_series_inversion(self.p, x, self.N + 1))

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return self.N == other.N and self.p == other.p
        return NotImplemented

    def __hash__(self):
        return hash((self.N, self.p))

    # -- inspection --------------------------------------------------------

    def coeff(self, n: int) -> UPoly:
        """Ordinary coefficient ``[x^n]``."""
        cs: dict[int, Fraction] = {}
        for (i, k), c in self.p.terms():
            if i == n:
                cs[k] = _frac(c)
        top = max(cs, default=-1)
        return UPoly(tuple(cs.get(k, Fraction(0)) for k in range(top + 1)))

    def egf(self, n: int) -> UPoly:
        """``n! [x^n]``: the exponential coefficient."""
        f = math.factorial(n)
        return UPoly(tuple(c * f for c in self.coeff(n).coeffs))

    def egf_table(self) -> list[UPoly]:
        return [self.egf(n) for n in range(self.N + 1)]

    def at_u(self, value) -> TruncSeries:
        """Specialize u to a number."""
        return TruncSeries(self.N, self.p.compose(u, RING(value)))

    def u_coeff(self, k: int) -> TruncSeries:
        p = RING.zero
        for (i, j), c in self.p.terms():
            if j == k:
                p += c * x**i
        return TruncSeries(self.N, p)

    def first_nonzero(self):
        """Smallest n with a nonzero x^n coefficient, or None."""
        for n in range(self.N + 1):
            if self.coeff(n).coeffs:
                return n
        return None

    def is_zero(self) -> bool:
        return self.p == 0

    def __repr__(self):
        return f"TruncSeries(N={self.N}, {self.p})"
