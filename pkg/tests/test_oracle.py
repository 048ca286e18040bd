import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidfaces import (
    Arrangement,
    braid,
    catalan,
    enumerate_faces_grid,
    face_counts,
    ideal_arrangement,
    ideal_chain,
    linial,
    semiorder,
    shi,
)
from braidfaces import _kernels
from braidfaces.oracle import BudgetExceededError, budget_cap, count_regions, grid_size, grid_values

from oracles import catalan_number, lp_faces, ordered_set_partitions

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not importable")


@pytest.mark.parametrize("A, count", [(braid(2), 3), (braid(3), 13), (catalan(1, 2), 7)])
def test_face_totals(A, count):
    assert len(enumerate_faces_grid(A)) == count


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_braid_faces_are_ordered_partitions(n):
    assert len(enumerate_faces_grid(braid(n))) == ordered_set_partitions(n)


@pytest.mark.parametrize(
    "A, counts",
    [(catalan(1, 2), (3, 4)), (semiorder(1, 2), (2, 3)), (catalan(1, 3), (13, 42, 30))],
)
def test_face_counts_examples(A, counts):
    assert face_counts(A) == counts


@pytest.mark.parametrize("n", [2, 3, 4])
def test_region_counts(n):
    assert count_regions(shi(1, n)) == (n + 1) ** (n - 1)
    assert count_regions(catalan(1, n)) == math.factorial(n) * catalan_number(n)
    assert count_regions(semiorder(1, n)) == {2: 3, 3: 19, 4: 183}[n]


def test_degenerate_inputs():
    assert len(enumerate_faces_grid(Arrangement(0))) == 1
    faces = enumerate_faces_grid(Arrangement(3))
    assert len(faces) == 1 and next(iter(faces)).dim == 3


def test_non_strongly_transitive_matches_lp():
    A = linial(3)
    assert {sv.signs for sv in enumerate_faces_grid(A)} == lp_faces(A)


def test_budget(monkeypatch):
    with pytest.raises(BudgetExceededError) as err:
        enumerate_faces_grid(catalan(2, 3), cap=100)
    assert err.value.required == grid_size(catalan(2, 3))
    monkeypatch.setenv("BRAIDFACES_BUDGET", "10")
    assert budget_cap() == 10
    with pytest.raises(BudgetExceededError):
        face_counts(catalan(1, 2))


def test_grid_values_layout():
    vals = grid_values(3, 2)
    assert len(vals) == 5 * 3
    assert list(vals[:4]) == [0, 1, 2, 4]
    assert np.all(np.diff(vals) > 0)


def test_monotone_along_ideal_chain():
    sizes = [len(enumerate_faces_grid(ideal_arrangement(1, I, 3))) for I in ideal_chain(3)]
    assert sizes == sorted(sizes)
    assert sizes[0] == 13 and sizes[-1] == 85


@needs_numba
@pytest.mark.parametrize("A", [catalan(1, 3), shi(2, 3), semiorder(1, 4)], ids=repr)
def test_backends_agree(A):
    assert enumerate_faces_grid(A, backend="numpy") == enumerate_faces_grid(A, backend="numba")


def test_backend_env(monkeypatch):
    monkeypatch.setenv("BRAIDFACES_BACKEND", "numpy")
    assert _kernels.default_backend() == "numpy"
    with pytest.raises(ValueError):
        _kernels.sign_codes(grid_values(2, 1), 2, np.zeros(1, np.int64), np.zeros(1, np.int64), np.zeros(1, np.int64), 0, 1, backend="gpu")


def _kernel_inputs(A):
    n = A.n
    T = A.sorted_triples
    I = np.array([i - 1 for i, _, _ in T], dtype=np.int64)
    J = np.array([j - 1 for _, j, _ in T], dtype=np.int64)
    S = np.array([s * (n + 1) for _, _, s in T], dtype=np.int64)
    return I, J, S


arr_st = st.builds(
    lambda n, ts: Arrangement.from_hyperplanes(n, [(i, j, s) for i, j, s in ts if max(i, j) <= n and i != j]),
    st.integers(2, 4),
    st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4), st.integers(-2, 2)), min_size=1, max_size=10),
).filter(lambda A: len(A) > 0)


@settings(max_examples=60, deadline=None)
@given(arr_st, st.integers(-50, 50), st.integers(0, 10**6))
def test_translation_invariance(A, shift, start):
    vals = grid_values(A.n, A.m)
    total = len(vals) ** A.n
    start %= total
    stop = min(total, start + 256)
    I, J, S = _kernel_inputs(A)
    base = _kernels.sign_codes(vals, A.n, I, J, S, start, stop, backend="numpy")
    moved = _kernels.sign_codes(vals + shift * (A.n + 1), A.n, I, J, S, start, stop, backend="numpy")
    assert np.array_equal(base, moved)
    if _kernels.HAVE_NUMBA:
        assert np.array_equal(base, _kernels.sign_codes(vals, A.n, I, J, S, start, stop, backend="numba"))


@given(st.lists(st.sampled_from((-1, 0, 1)), min_size=1, max_size=90))
def test_decode_inverts_packing(signs):
    T = len(signs)
    words = np.zeros(_kernels.n_words(T), dtype=np.int64)
    for t, sg in enumerate(signs):
        words[t // _kernels.PER_WORD] += (sg + 1) * 3 ** (t % _kernels.PER_WORD)
    assert _kernels.decode(words, T) == tuple(signs)


@given(st.integers(1, 3), st.lists(st.integers(0, 5), min_size=1, max_size=60))
def test_unique_rows(width, flat):
    rows = np.array(flat[: len(flat) // width * width] or [0] * width, dtype=np.int64).reshape(-1, width)
    got = {tuple(r) for r in _kernels.unique_rows(rows).tolist()}
    assert got == {tuple(r) for r in rows.tolist()}
    assert len(_kernels.unique_rows(rows)) == len(got)
