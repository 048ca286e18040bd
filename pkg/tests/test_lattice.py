import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidfaces import (
    MTree,
    SignVector,
    Tree,
    braid,
    catalan,
    enumerate_admissible,
    enumerate_faces_grid,
    face_sign_vector,
    ideal_arrangement,
    is_strongly_transitive,
    multi_catalan,
    region_sign_vector,
    semiorder,
    shi,
)
from braidfaces.lattice import (
    Flat,
    FlatError,
    cadet_simple_holds,
    contract,
    diagram_face,
    enumerate_flats,
    enumerate_pairs,
    expand,
    flat_from_equalities,
    flat_of_sign_vector,
    restrict,
    set_partitions,
    theta,
)
from braidfaces.oracle import count_regions

ARRANGEMENTS = [
    braid(3),
    catalan(1, 2),
    catalan(1, 3),
    catalan(2, 2),
    shi(1, 3),
    semiorder(1, 3),
    ideal_arrangement(1, [(1, 2), (1, 3)], 3),
    multi_catalan((1, 2, 0)),
]
IDS = [repr(A) for A in ARRANGEMENTS]


def test_flat_counts():
    assert len(enumerate_flats(braid(2))) == 2
    flats = enumerate_flats(catalan(1, 2))
    assert len(flats) == 4
    assert {L.delta for L in flats if L.dim == 1} == {(0, 0), (0, 1), (1, 0)}
    assert sum(1 for L in enumerate_flats(catalan(1, 3)) if L.dim == 1) == 13


@pytest.mark.parametrize("n, bell", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
def test_set_partitions_bell(n, bell):
    parts = list(set_partitions(n))
    assert len(parts) == len(set(parts)) == bell


def test_restriction_examples():
    R = restrict(braid(3), Flat(((1, 2), (3,)), (0, 0, 0)))
    assert R.sub == braid(2)
    R = restrict(catalan(1, 2), Flat(((1, 2),), (0, 1)))
    assert R.d == 1 and len(R.sub) == 0


def test_contract_unmarked_pads_tree():
    for T in [Tree.from_bracket("1(2(.,3),.)", 1), Tree.from_bracket("2(.,.,1(3,.,.))", 2)]:
        L, small = contract(MTree(T), catalan(T.m, 3))
        assert L == Flat.ambient(3)
        assert small.m == T.m * 3
        for j in range(1, 4):
            assert small.children(j)[: T.m + 1] == T.children(j)
            assert all(c is None for c in small.children(j)[T.m + 1:])
        assert expand(L, small, m=T.m) == MTree(T)


def test_contract_marked_edge():
    t = MTree(Tree.from_bracket("1(.,2)", 1), frozenset({(1, 1)}))
    L, small = contract(t, catalan(1, 2))
    assert L == Flat(((1, 2),), (0, 1))
    assert small.n == 1 and small.m == 2
    assert L.equalities(catalan(1, 2)) == {(2, 1, 1)}


@pytest.mark.parametrize("A", ARRANGEMENTS, ids=IDS)
def test_contract_expand_roundtrip(A):
    trees = list(enumerate_admissible(A))
    for t in trees:
        assert expand(*contract(t, A), A) == t
    pairs = list(enumerate_pairs(A))
    assert len(pairs) == len(trees)
    for L, small in pairs:
        assert contract(expand(L, small, A), A) == (L, small)


@pytest.mark.parametrize("A", ARRANGEMENTS, ids=IDS)
def test_commuting_diagram(A):
    for t in enumerate_admissible(A):
        assert diagram_face(t, A) == face_sign_vector(A, t)


@pytest.mark.parametrize("A", ARRANGEMENTS, ids=IDS)
def test_flats_encode_and_restrict_well(A):
    flats = enumerate_flats(A)
    zero_sets = [L.equalities(A) for L in flats]
    assert len(set(zero_sets)) == len(flats)
    for L, Z in zip(flats, zero_sets):
        assert flat_from_equalities(A.n, Z) == L
        R = restrict(A, L)
        assert is_strongly_transitive(R.sub)
        assert cadet_simple_holds(A, L, R)


@pytest.mark.parametrize("A", ARRANGEMENTS, ids=IDS)
def test_flats_are_the_face_flats(A):
    faces = enumerate_faces_grid(A)
    assert {flat_of_sign_vector(sv) for sv in faces} == set(enumerate_flats(A))
    assert sum(count_regions(restrict(A, L).sub) for L in enumerate_flats(A)) == len(faces)


def test_theta_examples():
    A = catalan(1, 3)
    L = Flat.ambient(3)
    R = restrict(A, L)
    for sv in enumerate_faces_grid(A):
        if sv.is_region():
            assert theta(L, SignVector(3, R.sub.sorted_triples, sv.signs), A, R) == sv
    A = braid(2)
    L = Flat(((1, 2),), (0, 0))
    out = theta(L, SignVector(1, (), ()), A)
    assert out.as_dict == {(2, 1, 0): 0}


def test_theta_rejects_foreign_sign_vector():
    with pytest.raises(ValueError):
        theta(Flat.ambient(2), SignVector(2, (), ()), braid(2))


def test_flat_validation():
    with pytest.raises(FlatError):
        Flat(((1,), (2,)), (0, 1))
    with pytest.raises(FlatError):
        Flat(((1,),), (0, 0))
    with pytest.raises(FlatError):
        flat_from_equalities(2, [(2, 1, 0), (2, 1, 1)])


def test_expand_rejects_wide_slots():
    with pytest.raises(ValueError):
        expand(Flat.ambient(2), Tree.from_bracket("1(.,.,.,2)", 3), m=1)


flat_st = st.integers(1, 4).flatmap(
    lambda n: st.sampled_from(enumerate_flats(catalan(1, n)))
)


@given(flat_st)
def test_flat_json_roundtrip(L):
    assert Flat.from_json(L.to_json()) == L
    assert [L.block_of[a] for a in L.anchors] == list(range(1, L.dim + 1))
    for k in range(1, L.dim + 1):
        assert L.offset(L.anchor(k)) == 0
        assert max(L.offset(i) for i in L.ordered(k)) == L.top(k)
