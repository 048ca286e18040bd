"""Face generating functions ``F_S(x, u) = sum c_{n,k} u^k x^n / n!`` of the
arrangements ``{x_i - x_j = s : s in S}``, by solving the root-block system
for the series ``F^U`` (trees whose root block starts with U)."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

import sympy

from .shades import SeriesConditionError, check_set, top
from .transfer import X, Y, BiRat, connection_set, powers, shadow_rational, subsets
from .truncated import TruncSeries, UPoly, u

DEFAULT_MAX_ORDER = 8


class StabilizationError(RuntimeError):
    pass


def _check_order(N: int, max_order: int):
    if N < 0:
        raise ValueError(f"order must be non-negative, got {N}")
    if N > max_order:
        raise ValueError(f"order {N} exceeds the configured maximum {max_order}")


def face_series_parts(S, N: int, *, max_order: int = DEFAULT_MAX_ORDER):
    """Return ``(F, {U: F^U})`` truncated at ``x^N``."""
    S = check_set(S)
    _check_order(N, max_order)
    m = top(S)
    parts = subsets(m)
    D = {(U, V): shadow_rational(S, U, V) for U in parts for V in parts}
    C = {(V, W): sorted(connection_set(S, V, W)) for V in parts for W in parts}
    ex = TruncSeries.exp(N)
    Xser = ex - 1
    ydeg = max(r.degrees()[1] for r in D.values()) if D else 0
    ydeg = max(ydeg, m + 1)
    xdeg = max(r.degrees()[0] for r in D.values()) if D else 0
    Xs = powers(Xser, xdeg)
    zero_in = 0 in S
    boundary = 1 - TruncSeries.exp(N, -u) if not zero_in else None  # 1 - e^{-xu}

    FU = {U: TruncSeries(N) for U in parts}
    F = TruncSeries.const(N, 1)
    previous = None
    for step in range(N + 3):
        Ys = powers(F, ydeg)
        Dval = {k: r.evaluate(Xs, Ys) for k, r in D.items()}
        tail = {V: 1 + _sum(TruncSeries(N), (_ypoly(C[(V, W)], Ys) * FU[W] for W in parts)) for V in parts}
        new = {}
        for U in parts:
            acc = TruncSeries(N)
            for V in parts:
                dv = Dval[(U, V)]
                if not zero_in and not U and not V:
                    dv = dv - Xser
                acc = acc + u * dv * tail[V]
            if not zero_in and not U:
                acc = acc + boundary * tail[frozenset()]
            new[U] = acc
        FU = new
        F = 1 + _sum(TruncSeries(N), FU.values())
        state = (F, tuple(FU[U] for U in parts))
        if step >= N + 1:
            if state != previous:
                raise StabilizationError(f"face series for S={sorted(S)} did not stabilize")
            break
        previous = state
    return F, FU


def _sum(start, items):
    for it in items:
        start = start + it
    return start


def _ypoly(exponents, Ys):
    acc = TruncSeries(Ys[0].N)
    for s in exponents:
        acc = acc + Ys[s]
    return acc


def face_series(S, N: int, *, max_order: int = DEFAULT_MAX_ORDER) -> TruncSeries:
    return face_series_parts(S, N, max_order=max_order)[0]


def face_table(F: TruncSeries) -> list[tuple[int, int, int]]:
    """Rows ``(n, k, c_{n,k})`` with nonzero counts, for ``n >= 1``."""
    rows = []
    for n in range(1, F.N + 1):
        poly = F.egf(n)
        for k, c in enumerate(poly.coeffs):
            if c:
                if c.denominator != 1:
                    raise ArithmeticError(f"non-integral count {c} at n={n}, k={k}")
                rows.append((n, k, int(c)))
    return rows


def line_series(S, N: int, *, max_order: int = DEFAULT_MAX_ORDER) -> TruncSeries:
    """Generating function of one-dimensional faces, from the shadow series at Y = 1."""
    S = check_set(S)
    _check_order(N, max_order)
    m = top(S)
    ex = TruncSeries.exp(N)
    Xser = ex - 1
    total = TruncSeries(N)
    for U in subsets(m):
        for V in subsets(m):
            r = shadow_rational(S, U, V)
            dx, dy = r.degrees()
            total = total + r.evaluate(powers(Xser, dx), [TruncSeries.const(N, 1)] * (dy + 1))
    if 0 not in S:
        total = total - (ex - 1 - TruncSeries.var(N))
    return total


# ---------------------------------------------------------------------------
# closed forms


@dataclass
class ClosedFormReport:
    family: str
    m: int
    N: int
    residuals: dict[str, TruncSeries] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.is_zero() for r in self.residuals.values())

    def first_offending(self) -> Optional[tuple[str, int, UPoly]]:
        for name, r in self.residuals.items():
            n = r.first_nonzero()
            if n is not None:
                return name, n, r.coeff(n)
        return None

    def __str__(self) -> str:
        if self.ok:
            return f"{self.family}({self.m}) to order {self.N}: residual 0"
        name, n, c = self.first_offending()
        return f"{self.family}({self.m}) to order {self.N}: {name} residual has x^{n} coefficient {c}"


def _family_set(family: str, m: int) -> list[int]:
    if family == "catalan":
        return list(range(-m, m + 1))
    if family == "semiorder":
        return [s for s in range(-m, m + 1) if s]
    raise ValueError(f"unknown family {family!r}; expected catalan or semiorder")


def _eval_expr(expr, N: int, Xs, Ys) -> TruncSeries:
    return BiRat.from_expr(expr).evaluate(Xs, Ys)


def verify_closed_form(family: str, m: Optional[int] = None, N: int = 6) -> ClosedFormReport:
    """Substitute the computed face series into the known functional equations.

    ``family`` is ``"catalan"`` or ``"semiorder"``; ``"catalan(2)"`` also works
    in place of passing ``m``.
    """
    match = re.fullmatch(r"\s*(\w+)\s*\(\s*(\d+)\s*\)\s*", family)
    if match:
        family, m = match.group(1), int(match.group(2))
    if m is None or m < 1:
        raise ValueError("closed forms are stated for m >= 1")
    S = _family_set(family, m)
    F = face_series(S, N, max_order=max(N, DEFAULT_MAX_ORDER))
    ex = TruncSeries.exp(N)
    emx = TruncSeries.exp(N, -1)
    Xser = ex - 1
    report = ClosedFormReport(family, m, N)
    ramp = sum(Y**s for s in range(1, m + 1))
    if family == "catalan":
        omega = X * Y ** (m + 1) / (1 - X * ramp)
        Xs, Ys = powers(Xser, 1), powers(F, m + 1)
        report.residuals["omega"] = F - 1 - u * _eval_expr(omega, N, Xs, Ys)
        report.residuals["exponential"] = F - emx - (1 + u) * (1 - emx) * F ** (m + 1)
    else:
        omega = X**2 * (Y ** (m + 2) - Y ** (2 * m + 2)) / (1 - Y - X * Y + X * Y ** (m + 1))
        r = BiRat.from_expr(sympy.cancel(omega))
        dx, dy = r.degrees()
        report.residuals["semiorder"] = (
            F - 1 - (1 - TruncSeries.exp(N, -u)) * F ** (m + 1) - u * r.evaluate(powers(Xser, dx), powers(F, dy))
        )
    return report
