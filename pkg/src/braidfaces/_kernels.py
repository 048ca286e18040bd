"""Hot loop of the face oracle: sign codes of grid points.

Each grid point is a flat index decoded in mixed radix into ``n`` coordinate
indices; ``vals`` maps an index to an integer coordinate (already scaled by
``n + 1``).  The signs of ``x_i - x_j - s`` over all triples are packed base 3,
``PER_WORD`` triples per int64 word.

Two interchangeable implementations: numba ``@njit`` and pure numpy.  Set
``BRAIDFACES_BACKEND=numpy`` to force the numpy path.
"""

from __future__ import annotations

import os

import numpy as np

PER_WORD = 39  # 3**39 < 2**63

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

HAVE_NUMBA = numba is not None


def default_backend() -> str:
    choice = os.environ.get("BRAIDFACES_BACKEND", "").strip().lower()
    if choice in ("numpy", "python", "off", "0"):
        return "numpy"
    if choice == "numba" and not HAVE_NUMBA:
        raise RuntimeError("BRAIDFACES_BACKEND=numba but numba is not importable")
    return "numba" if HAVE_NUMBA else "numpy"


def n_words(n_triples: int) -> int:
    return max(1, -(-n_triples // PER_WORD))


def sign_codes_numpy(vals, n, I, J, S, start, stop):
    """Codes for flat indices ``start..stop-1``; I, J are 0-based, S already scaled."""
    G = vals.shape[0]
    idx = np.arange(start, stop, dtype=np.int64)
    coords = np.empty((stop - start, n), dtype=np.int64)
    rest = idx
    for c in range(n - 1, -1, -1):
        rest, digit = np.divmod(rest, G)
        coords[:, c] = vals[digit]
    diff = coords[:, I] - coords[:, J] - S
    digits = (np.sign(diff) + 1).astype(np.int64)
    nw = n_words(len(I))
    codes = np.zeros((stop - start, nw), dtype=np.int64)
    for w in range(nw):
        block = digits[:, w * PER_WORD:(w + 1) * PER_WORD]
        powers = 3 ** np.arange(block.shape[1], dtype=np.int64)
        codes[:, w] = block @ powers
    return codes


def _sign_codes_py(vals, n, I, J, S, start, stop):
    G = vals.shape[0]
    T = I.shape[0]
    nw = max(1, (T + PER_WORD - 1) // PER_WORD)
    codes = np.zeros((stop - start, nw), dtype=np.int64)
    coords = np.empty(n, dtype=np.int64)
    pow3 = np.empty(PER_WORD, dtype=np.int64)
    pow3[0] = 1
    for k in range(1, PER_WORD):
        pow3[k] = pow3[k - 1] * 3
    for row in range(stop - start):
        rest = start + row
        for c in range(n - 1, -1, -1):
            coords[c] = vals[rest % G]
            rest //= G
        for t in range(T):
            d = coords[I[t]] - coords[J[t]] - S[t]
            digit = 1
            if d > 0:
                digit = 2
            elif d < 0:
                digit = 0
            w = t // PER_WORD
            codes[row, w] += digit * pow3[t % PER_WORD]
    return codes


if HAVE_NUMBA:
    sign_codes_numba = numba.njit(cache=True)(_sign_codes_py)
else:  # pragma: no cover
    sign_codes_numba = None


def sign_codes(vals, n, I, J, S, start, stop, backend=None):
    backend = backend or default_backend()
    if backend == "numba":
        return sign_codes_numba(vals, n, I, J, S, start, stop)
    if backend == "numpy":
        return sign_codes_numpy(vals, n, I, J, S, start, stop)
    raise ValueError(f"unknown backend {backend!r}")


def unique_rows(codes: np.ndarray) -> np.ndarray:
    """Distinct rows; a single-word code is deduplicated as a flat array."""
    if codes.shape[1] == 1:
        return np.unique(codes[:, 0])[:, None]
    flat = np.ascontiguousarray(codes).view(np.dtype((np.void, codes.dtype.itemsize * codes.shape[1])))
    return np.unique(flat).view(codes.dtype).reshape(-1, codes.shape[1])


def decode(code_row, n_triples: int) -> tuple[int, ...]:
    signs = []
    for t in range(n_triples):
        word = int(code_row[t // PER_WORD])
        signs.append((word // 3 ** (t % PER_WORD)) % 3 - 1)
    return tuple(signs)
