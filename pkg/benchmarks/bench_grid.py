"""Compare the numba and numpy grid kernels on a few arrangements.

    python3 benchmarks/bench_grid.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from braidfaces import braid, catalan, semiorder, shi
from braidfaces import _kernels
from braidfaces.oracle import CHUNK, grid_values


def kernel_inputs(A):
    n, triples = A.n, A.sorted_triples
    vals = grid_values(n, A.m)
    I = np.array([i - 1 for i, _, _ in triples], dtype=np.int64)
    J = np.array([j - 1 for _, j, _ in triples], dtype=np.int64)
    S = np.array([s * (n + 1) for _, _, s in triples], dtype=np.int64)
    return vals, n, I, J, S, len(vals) ** n


def run(A, backend):
    vals, n, I, J, S, total = kernel_inputs(A)
    seen = set()
    t0 = time.perf_counter()
    for start in range(0, total, CHUNK):
        stop = min(start + CHUNK, total)
        codes = _kernels.sign_codes(vals, n, I, J, S, start, stop, backend=backend)
        seen.update(map(tuple, _kernels.unique_rows(codes).tolist()))
    return time.perf_counter() - t0, len(seen), total


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--large", action="store_true", help="include n = 5 cases")
    args = ap.parse_args()
    cases = [("braid(4)", braid(4)), ("catalan(1,4)", catalan(1, 4)), ("catalan(2,4)", catalan(2, 4)),
             ("shi(1,4)", shi(1, 4)), ("semiorder(1,4)", semiorder(1, 4))]
    if args.large:
        cases.append(("catalan(1,5)", catalan(1, 5)))
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    if _kernels.HAVE_NUMBA:
        run(braid(2), "numba")  # compile outside the timing
    print(f"{'arrangement':<16}{'points':>12}{'faces':>8}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, A in cases:
        times, faces = {}, set()
        for b in backends:
            best = min(run(A, b)[0] for _ in range(args.repeat))
            times[b] = best
            _, nf, total = run(A, b)
            faces.add(nf)
        assert len(faces) == 1, f"backends disagree on {name}"
        speed = times["numpy"] / times["numba"] if "numba" in times else float("nan")
        print(f"{name:<16}{total:>12}{faces.pop():>8}" + "".join(f"{times[b]:>11.3f}s" for b in backends) + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
