"""Independent reference computations used only by the tests."""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import linprog


def tree_count(m: int, n: int) -> int:
    return math.factorial(n) * math.comb((m + 1) * n, n) // (m * n + 1)


def catalan_number(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def _feasible(n, rows):
    """LP test: maximise eps subject to the sign pattern, eps <= 1.

    ``rows`` holds ``(i, j, s, sign)`` meaning sign * (x_i - x_j - s) > 0, or = 0
    when sign is 0.  Feasible with a strict part iff the optimum eps is positive.
    """
    if not rows:
        return True
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for i, j, s, sg in rows:
        r = np.zeros(n + 1)
        r[i - 1] += 1
        r[j - 1] -= 1
        if sg == 0:
            A_eq.append(r[:n].tolist() + [0.0])
            b_eq.append(float(s))
        else:
            # -sg * (x_i - x_j) + eps <= -sg * s
            row = (-sg * r).tolist()
            row[n] = 1.0
            A_ub.append(row)
            b_ub.append(float(-sg * s))
    c = np.zeros(n + 1)
    c[n] = -1.0
    bounds = [(-10 * n * (1 + max(abs(r[2]) for r in rows)), None)] * n + [(None, 1.0)]
    bounds[0] = (0.0, 0.0)
    res = linprog(
        c,
        A_ub=A_ub or None,
        b_ub=b_ub or None,
        A_eq=A_eq or None,
        b_eq=b_eq or None,
        bounds=bounds,
        method="highs",
    )
    if res.status != 0:
        return False
    if not A_ub:
        return True
    return -res.fun > 1e-7


def lp_faces(A) -> set[tuple[int, ...]]:
    """Sign vectors (ordered as ``A.sorted_triples``) of all faces, by depth-first LP pruning."""
    triples = A.sorted_triples
    out = set()

    def dfs(prefix):
        if len(prefix) == len(triples):
            out.add(tuple(prefix))
            return
        i, j, s = triples[len(prefix)]
        for sg in (-1, 0, 1):
            rows = [(*t, g) for t, g in zip(triples, prefix)] + [(i, j, s, sg)]
            if _feasible(A.n, rows):
                dfs(prefix + [sg])

    dfs([])
    return out


def ordered_set_partitions(n: int) -> int:
    """Fubini numbers: faces of the braid arrangement in dimension n."""
    return sum(math.comb(n, k) * ordered_set_partitions(n - k) for k in range(1, n + 1)) if n else 1
