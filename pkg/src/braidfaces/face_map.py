"""Sign vectors of faces, the tree-to-face maps, and exact witness points.

A face of a braid-type arrangement is identified by its sign vector: for
every hyperplane ``{x_i - x_j = s}`` the sign of ``x_i - x_j - s`` on the face.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .arrangement import Arrangement, Triple, is_canonical
from .marked_trees import MTree, is_admissible
from .trees import Tree, order_key


class NotInDomainError(ValueError):
    pass


@dataclass(frozen=True)
class SignVector:
    n: int
    triples: tuple[Triple, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.triples) != len(self.signs):
            raise ValueError("one sign per triple")
        if any(s not in (-1, 0, 1) for s in self.signs):
            raise ValueError(f"signs must be -1, 0 or 1: {self.signs}")

    @classmethod
    def from_map(cls, A: Arrangement, signs: dict) -> SignVector:
        return cls(A.n, A.sorted_triples, tuple(signs[t] for t in A.sorted_triples))

    def __getitem__(self, triple: Triple) -> int:
        return self.as_dict[tuple(triple)]

    @cached_property
    def as_dict(self) -> dict[Triple, int]:
        return dict(zip(self.triples, self.signs))

    @property
    def zero_set(self) -> frozenset[Triple]:
        return frozenset(t for t, s in zip(self.triples, self.signs) if s == 0)

    @property
    def dim(self) -> int:
        """Dimension of the face: components of the graph of equalities x_i - x_j = s."""
        parent = list(range(self.n + 1))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        comps = self.n
        for (i, j, _), sg in zip(self.triples, self.signs):
            if sg == 0:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
                    comps -= 1
        return comps

    def is_region(self) -> bool:
        return 0 not in self.signs

    def satisfied_by(self, point: Sequence) -> bool:
        for (i, j, s), sg in zip(self.triples, self.signs):
            v = point[i - 1] - point[j - 1] - s
            if (v > 0) - (v < 0) != sg:
                return False
        return True

    def to_json(self) -> list:
        return [[i, j, s, sg] for (i, j, s), sg in zip(self.triples, self.signs)]

    def __str__(self) -> str:
        sym = {-1: "-", 0: "0", 1: "+"}
        return "".join(sym[s] for s in self.signs)


# ---------------------------------------------------------------------------
# tree -> sign vector


def in_region_domain(A: Arrangement, T: Tree) -> bool:
    """T in T_m^n(A): no cadet edge ``i = s-cadet(j)`` with ``(i, j, s)`` canonical and absent from A."""
    for j, s, i in T.cadet_edges():
        if is_canonical(i, j, s) and (i, j, s) not in A.triples:
            return False
    return True


def region_sign_vector(A: Arrangement, T: Tree, *, check: bool = True) -> SignVector:
    if T.n != A.n:
        raise NotInDomainError(f"tree has {T.n} nodes, arrangement dimension is {A.n}")
    if A.m > T.m:
        raise NotInDomainError(f"arrangement offsets reach {A.m} > tree parameter {T.m}")
    if check and not in_region_domain(A, T):
        raise NotInDomainError(f"tree {T} does not index a region of {A!r}")
    addr = T.addresses
    signs = []
    for i, j, s in A.sorted_triples:
        below = order_key(addr[i]) < order_key(addr[j] + (s,))
        signs.append(-1 if below else 1)
    return SignVector(A.n, A.sorted_triples, tuple(signs))


def face_sign_vector(A: Arrangement, t: MTree, *, check: bool = True) -> SignVector:
    tree = t.tree
    if tree.n != A.n:
        raise NotInDomainError(f"tree has {tree.n} nodes, arrangement dimension is {A.n}")
    if A.m > tree.m:
        raise NotInDomainError(f"arrangement offsets reach {A.m} > tree parameter {tree.m}")
    if check and not is_admissible(t, A):
        raise NotInDomainError(f"marked tree {t} is not admissible for {A!r}")
    addr = tree.addresses
    bd = t.block_data
    signs = []
    for i, j, s in A.sorted_triples:
        if bd.block_of[i] == bd.block_of[j]:
            v = tree.drift(i) - tree.drift(j) - s
            signs.append((v > 0) - (v < 0))
        else:
            below = order_key(addr[i]) < order_key(addr[j] + (s,))
            signs.append(-1 if below else 1)
    return SignVector(A.n, A.sorted_triples, tuple(signs))


# ---------------------------------------------------------------------------
# feasibility of difference systems


def _lex_potentials(n: int, edges: Iterable[tuple[int, int, int, int]]) -> Optional[list[tuple[int, int]]]:
    """Shortest-path potentials for constraints ``x_u - x_v <= (a, b)`` in lexicographic weights.

    ``edges`` holds ``(v, u, a, b)``.  A virtual source reaches every vertex with
    weight (0, 0).  Returns None on a negative cycle.
    """
    edges = list(edges)
    dist = [(0, 0)] * (n + 1)
    for _ in range(n + 1):
        changed = False
        for v, u, a, b in edges:
            cand = (dist[v][0] + a, dist[v][1] + b)
            if cand < dist[u]:
                dist[u] = cand
                changed = True
        if not changed:
            return dist
    return None


def _constraint_edges(sv: SignVector) -> list[tuple[int, int, int, int]]:
    edges = []
    for (i, j, s), sg in zip(sv.triples, sv.signs):
        if sg < 0:  # x_i - x_j < s
            edges.append((j, i, s, -1))
        elif sg > 0:  # x_j - x_i < -s
            edges.append((i, j, -s, -1))
        else:
            edges.append((j, i, s, 0))
            edges.append((i, j, -s, 0))
    return edges


def feasible_witness(sv: SignVector, A: Optional[Arrangement] = None) -> Optional[tuple[Fraction, ...]]:
    """A rational point on the face described by ``sv``, or None if it is empty.

    Strict inequalities carry the lexicographic weight ``(s, -1)``; the point is
    ``x_i = a_i + b_i / (n + 1)`` from the potentials ``(a_i, b_i)``, shifted so the
    lexicographically smallest potential is ``(0, 0)``.
    """
    if A is not None and (A.n != sv.n or A.sorted_triples != sv.triples):
        raise ValueError("sign vector does not belong to this arrangement")
    n = sv.n
    dist = _lex_potentials(n, _constraint_edges(sv))
    if dist is None:
        return None
    pot = dist[1:]
    if not pot:
        return ()
    a0, b0 = min(pot)
    eps = Fraction(1, n + 1)
    point = tuple(Fraction(a - a0) + (b - b0) * eps for a, b in pot)
    if not sv.satisfied_by(point):
        raise AssertionError(f"witness {point} violates {sv}")
    return point


def lex_grid_witness(sv: SignVector) -> Optional[tuple[int, ...]]:
    """Witness in scaled integer form ``(n+1) * x`` lying in the oracle grid window."""
    n = sv.n
    dist = _lex_potentials(n, _constraint_edges(sv))
    if dist is None:
        return None
    M = max((s for _, _, s in sv.triples), default=0)
    shift_a = (n - 1) * max(M, 1)
    return tuple((a + shift_a) * (n + 1) + (b + n - 1) for a, b in dist[1:])


def format_point(point: Sequence[Fraction]) -> list[str]:
    return [f"{p.numerator}/{p.denominator}" if p.denominator != 1 else str(p.numerator) for p in point]
