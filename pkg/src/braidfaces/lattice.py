"""Intersection lattice of a braid-type arrangement, restrictions to flats,
and the contraction/expansion between marked trees and (flat, tree) pairs.

A flat is encoded by a set partition of [n] together with offsets ``delta``:
inside a block, ``x_i = x_a + delta[i]`` where ``a`` is the block's anchor (the
element with offset 0 and smallest label).  Blocks are ordered by their
minimum element, and inside a block elements are ordered by ``(delta, label)``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .arrangement import Arrangement, Triple, canonical
from .face_map import SignVector, region_sign_vector
from .marked_trees import MTree, block_is_connected, is_admissible
from .trees import Tree, TreeError, enumerate_trees


class FlatError(ValueError):
    pass


@dataclass(frozen=True)
class Flat:
    blocks: tuple[tuple[int, ...], ...]
    delta: tuple[int, ...]  # delta[i - 1] for label i

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=min))
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "delta", tuple(int(v) for v in self.delta))
        n = len(self.delta)
        if sorted(i for b in blocks for i in b) != list(range(1, n + 1)):
            raise FlatError(f"blocks {blocks} do not partition [{n}]")
        for b in blocks:
            if min(self.delta[i - 1] for i in b) != 0:
                raise FlatError(f"block {b} has no element at offset 0")

    @property
    def n(self) -> int:
        return len(self.delta)

    @property
    def dim(self) -> int:
        return len(self.blocks)

    def offset(self, i: int) -> int:
        return self.delta[i - 1]

    @cached_property
    def block_of(self) -> dict[int, int]:
        """Label -> block number, 1-based."""
        return {i: k + 1 for k, b in enumerate(self.blocks) for i in b}

    def ordered(self, k: int) -> tuple[int, ...]:
        """Elements of block k (1-based) by increasing offset, ties by label."""
        return tuple(sorted(self.blocks[k - 1], key=lambda i: (self.delta[i - 1], i)))

    def anchor(self, k: int) -> int:
        return self.ordered(k)[0]

    @property
    def anchors(self) -> tuple[int, ...]:
        return tuple(self.anchor(k) for k in range(1, self.dim + 1))

    def top(self, k: int) -> int:
        """Largest offset in block k."""
        return max(self.delta[i - 1] for i in self.blocks[k - 1])

    def equalities(self, A: Arrangement) -> frozenset[Triple]:
        """Triples of A whose hyperplane contains the flat."""
        return frozenset(
            (i, j, s)
            for i, j, s in A.triples
            if self.block_of[i] == self.block_of[j] and s == self.delta[i - 1] - self.delta[j - 1]
        )

    def to_json(self) -> dict:
        return {"blocks": [list(b) for b in self.blocks], "delta": list(self.delta)}

    @classmethod
    def from_json(cls, data) -> Flat:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(tuple(b) for b in data["blocks"]), tuple(data["delta"]))

    @classmethod
    def ambient(cls, n: int) -> Flat:
        return cls(tuple((i,) for i in range(1, n + 1)), (0,) * n)


def set_partitions(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Set partitions of [n] via restricted growth strings, blocks ordered by minimum."""
    if n == 0:
        yield ()
        return

    def grow(word, top):
        if len(word) == n:
            blocks = [[] for _ in range(top + 1)]
            for i, b in enumerate(word, start=1):
                blocks[b].append(i)
            yield tuple(tuple(b) for b in blocks)
            return
        for b in range(top + 2):
            yield from grow(word + [b], max(top, b))

    yield from grow([0], 0)


def is_connected_pair(block: Sequence[int], delta: Sequence[int], A: Arrangement) -> bool:
    return block_is_connected(block, A, lambda i: delta[i - 1])


def enumerate_flats(A: Arrangement, m: Optional[int] = None) -> list[Flat]:
    """Every flat of A as (partition, offsets), offsets bounded by (|B|-1)*m in each block."""
    m = A.m if m is None else m
    n = A.n
    out = []
    for blocks in set_partitions(n):
        per_block = []
        for b in blocks:
            options = []
            for offs in itertools.product(range((len(b) - 1) * m + 1), repeat=len(b)):
                if min(offs) != 0:
                    continue
                delta = [0] * (n + 1)
                for i, v in zip(b, offs):
                    delta[i] = v
                if block_is_connected(b, A, lambda i: delta[i]):
                    options.append(dict(zip(b, offs)))
            per_block.append(options)
        for choice in itertools.product(*per_block):
            delta = [0] * n
            for part in choice:
                for i, v in part.items():
                    delta[i - 1] = v
            out.append(Flat(blocks, tuple(delta)))
    return out


def flat_from_equalities(n: int, equalities: Iterable[Triple]) -> Flat:
    """Recover (partition, offsets) from a consistent system ``x_i - x_j = s``."""
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(1, n + 1)}
    for i, j, s in equalities:
        adj[j].append((i, s))  # x_i = x_j + s
        adj[i].append((j, -s))
    pos: dict[int, int] = {}
    blocks = []
    for root in range(1, n + 1):
        if root in pos:
            continue
        pos[root] = 0
        comp, stack = [root], [root]
        while stack:
            v = stack.pop()
            for w, s in adj[v]:
                if w not in pos:
                    pos[w] = pos[v] + s
                    comp.append(w)
                    stack.append(w)
                elif pos[w] != pos[v] + s:
                    raise FlatError("inconsistent equalities")
        low = min(pos[i] for i in comp)
        for i in comp:
            pos[i] -= low
        blocks.append(tuple(sorted(comp)))
    return Flat(tuple(blocks), tuple(pos[i] for i in range(1, n + 1)))


def flat_of_sign_vector(sv: SignVector) -> Flat:
    return flat_from_equalities(sv.n, sv.zero_set)


# ---------------------------------------------------------------------------
# restriction


@dataclass(frozen=True)
class Restriction:
    flat: Flat
    sub: Arrangement
    anchors: tuple[int, ...]
    image: dict  # triple of A across blocks -> (canonical triple of sub, flipped)

    @property
    def d(self) -> int:
        return self.flat.dim


def restrict(A: Arrangement, L: Flat) -> Restriction:
    """The arrangement induced on L, written in the anchor coordinates of L."""
    if L.n != A.n:
        raise FlatError(f"flat lives in dimension {L.n}, arrangement in {A.n}")
    bo, delta = L.block_of, L.delta
    image = {}
    for i, j, s in A.sorted_triples:
        k, l = bo[i], bo[j]
        if k == l:
            continue
        t = s - delta[i - 1] + delta[j - 1]
        c = canonical(k, l, t)
        image[(i, j, s)] = (c, c != (k, l, t))
    sub = Arrangement(L.dim, frozenset(c for c, _ in image.values()))
    return Restriction(L, sub, L.anchors, image)


def theta(L: Flat, r: SignVector, A: Arrangement, R: Optional[Restriction] = None) -> SignVector:
    """Pull a region of the restriction back to a face of A lying in L."""
    R = restrict(A, L) if R is None else R
    if r.triples != R.sub.sorted_triples:
        raise ValueError("sign vector does not belong to the restricted arrangement")
    delta = L.delta
    signs = []
    for i, j, s in A.sorted_triples:
        if (i, j, s) in R.image:
            c, flipped = R.image[(i, j, s)]
            sg = r[c]
            signs.append(-sg if flipped else sg)
        else:
            v = delta[i - 1] - delta[j - 1] - s
            signs.append((v > 0) - (v < 0))
    return SignVector(A.n, A.sorted_triples, tuple(signs))


# ---------------------------------------------------------------------------
# contraction and expansion


def contract(t: MTree, A: Arrangement, *, check: bool = True) -> tuple[Flat, Tree]:
    """Collapse each marked path to one node; the result has ``m*n + 1`` slots per node."""
    if check and not is_admissible(t, A):
        raise ValueError(f"marked tree {t} is not admissible")
    tree, bd = t.tree, t.block_data
    m, n = tree.m, tree.n
    width = m * n + 1
    offset = bd.offset
    L = Flat(tuple(bd.blocks), tuple(offset[i] for i in range(1, n + 1)))
    block_no = L.block_of
    if n == 0:
        return L, Tree(0, None)

    def build(k: int):
        path = L.ordered(k)
        if check:
            assert path == bd.blocks[bd.block_of[path[0]]], "block order disagrees with tree path"
        slots: list = [None] * width
        for p, j in enumerate(path):
            base = offset[j]
            last = p == len(path) - 1
            limit = m + 1 if last else tree.cadet(j)[0]
            for s in range(limit):
                c = tree.child(j, s)
                if c is not None:
                    slots[base + s] = build(block_no[c])
        return (k, tuple(slots))

    root_block = block_no[tree.root_label]
    contracted = Tree(m * n, build(root_block))
    if check:
        for i in range(1, n + 1):
            k = block_no[i]
            assert tree.drift(i) == contracted.drift(k) + offset[i], "drift identity violated"
    return L, contracted


def expand(L: Flat, small: Tree, A: Optional[Arrangement] = None, m: Optional[int] = None) -> MTree:
    """Inverse of :func:`contract`: dilate node k of ``small`` into the marked path of block k."""
    n = L.n
    if m is None:
        if A is None:
            raise ValueError("need A or m")
        m = A.m
    if small.n != L.dim:
        raise TreeError(f"tree has {small.n} nodes, flat has {L.dim} blocks")
    if n and small.m != m * n:
        raise TreeError(f"tree has arity {small.m + 1}, expected {m * n + 1}")
    if n == 0:
        return MTree(Tree(m, None), frozenset())
    marks = set()

    def build(node):
        k, kids = node
        path = L.ordered(k)
        top = L.top(k)
        if any(c is not None for c in kids[top + m + 1:]):
            raise TreeError(f"node {k} has a child beyond slot {top + m}")
        below = None
        for p in range(len(path) - 1, -1, -1):
            j = path[p]
            base = L.offset(j)
            if p == len(path) - 1:
                ch = [kids[base + s] for s in range(m + 1)]
                ch = [None if c is None else build(c) for c in ch]
            else:
                gap = L.offset(path[p + 1]) - base
                if gap > m:
                    raise TreeError(f"offset gap {gap} in block {k} exceeds {m}")
                ch = [None if kids[base + s] is None else build(kids[base + s]) for s in range(gap)]
                ch += [below] + [None] * (m - gap)
                marks.add((j, gap))
            below = (j, tuple(ch))
        return below

    t = MTree(Tree(m, build(small.root)), frozenset(marks))
    if A is not None and not is_admissible(t, A):
        raise ValueError("expanded tree is not admissible")
    return t


def region_trees(R: Restriction, m: int) -> Iterator[Tree]:
    """Trees of the restricted arrangement's region domain, with ``m*n + 1`` slots."""
    from .face_map import in_region_domain

    width_m = m * R.flat.n
    for T in enumerate_trees(width_m, R.d):
        if in_region_domain(R.sub, T):
            yield T


def enumerate_pairs(A: Arrangement, m: Optional[int] = None) -> Iterator[tuple[Flat, Tree]]:
    m = A.m if m is None else m
    for L in enumerate_flats(A, m):
        R = restrict(A, L)
        for T in region_trees(R, m):
            yield L, T


def diagram_face(t: MTree, A: Arrangement) -> SignVector:
    """The face of t obtained by contracting, mapping the region, and pulling back."""
    L, small = contract(t, A)
    R = restrict(A, L)
    return theta(L, region_sign_vector(R.sub, small), A, R)


def cadet_simple_holds(A: Arrangement, L: Flat, R: Optional[Restriction] = None) -> bool:
    """Each pair of blocks k != l, not both singletons, has every ``x_k - x_l = t`` with 0 <= t <= top(l)."""
    R = restrict(A, L) if R is None else R
    for k, l in itertools.permutations(range(1, L.dim + 1), 2):
        if len(L.blocks[k - 1]) == 1 and len(L.blocks[l - 1]) == 1:
            continue
        if any(not R.sub.contains(k, l, t) for t in range(L.top(l) + 1)):
            return False
    return True
