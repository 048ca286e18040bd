"""Brute-force face enumeration over a finite grid.

Every coordinate takes values ``a + b/(n+1)`` with ``0 <= a <= (n-1)*max(m,1)``
and ``0 <= b <= n-1``.  Every face of an arrangement with offsets at most m
contains such a point (the lexicographic witness of a face, shifted into the
window, lands on the grid), so the distinct sign vectors seen on the grid are
exactly the faces.  Coordinates are kept as integers scaled by ``n + 1``.
"""

from __future__ import annotations

import os
from typing import Optional

import numpy as np

from . import _kernels
from .arrangement import Arrangement
from .face_map import SignVector

DEFAULT_BUDGET = 10**8
CHUNK = 1 << 20


class BudgetExceededError(RuntimeError):
    def __init__(self, required: int, cap: int):
        super().__init__(
            f"grid has {required} points, above the cap of {cap}; "
            f"raise it to at least {required} (BRAIDFACES_BUDGET)"
        )
        self.required = required
        self.cap = cap


def budget_cap() -> int:
    raw = os.environ.get("BRAIDFACES_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def grid_values(n: int, m: int) -> np.ndarray:
    """Scaled per-coordinate values ``(n+1)*(a + b/(n+1))``, sorted."""
    top = (n - 1) * max(m, 1)
    return np.array([a * (n + 1) + b for a in range(top + 1) for b in range(n)], dtype=np.int64)


def grid_size(A: Arrangement) -> int:
    if A.n == 0:
        return 1
    return len(grid_values(A.n, A.m)) ** A.n


def enumerate_faces_grid(
    A: Arrangement, cap: Optional[int] = None, backend: Optional[str] = None
) -> set[SignVector]:
    cap = budget_cap() if cap is None else cap
    n, triples = A.n, A.sorted_triples
    if n == 0:
        return {SignVector(0, (), ())}
    vals = grid_values(n, A.m)
    total = len(vals) ** n
    if total > cap:
        raise BudgetExceededError(total, cap)
    T = len(triples)
    if T == 0:
        return {SignVector(n, (), ())}
    I = np.array([i - 1 for i, _, _ in triples], dtype=np.int64)
    J = np.array([j - 1 for _, j, _ in triples], dtype=np.int64)
    S = np.array([s * (n + 1) for _, _, s in triples], dtype=np.int64)

    seen: set[tuple[int, ...]] = set()
    for start in range(0, total, CHUNK):
        stop = min(start + CHUNK, total)
        codes = _kernels.sign_codes(vals, n, I, J, S, start, stop, backend=backend)
        seen.update(map(tuple, _kernels.unique_rows(codes).tolist()))
    return {SignVector(n, triples, _kernels.decode(code, T)) for code in seen}


def face_counts(A: Arrangement, cap: Optional[int] = None) -> tuple[int, ...]:
    """``(c_1, ..., c_n)`` where ``c_k`` counts faces of dimension k."""
    counts = [0] * (A.n + 1)
    for sv in enumerate_faces_grid(A, cap):
        counts[sv.dim] += 1
    return tuple(counts[1:])


def count_regions(A: Arrangement, cap: Optional[int] = None) -> int:
    return sum(1 for sv in enumerate_faces_grid(A, cap) if sv.is_region())


def face_json(sv: SignVector) -> dict:
    from .face_map import feasible_witness, format_point

    return {"signs": sv.to_json(), "dim": sv.dim, "witness": format_point(feasible_witness(sv))}
