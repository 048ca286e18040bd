"""Marked trees: an (m, n)-tree together with a set of marked cadet edges.

The marked edges cut the node set into blocks (maximal marked paths).  The
predicates here select, for an arrangement A, the marked trees indexing the
faces of A.
"""

from __future__ import annotations

import itertools
import json
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .arrangement import Arrangement, Ideal, is_strongly_transitive
from .trees import Tree, TreeError, enumerate_trees

Mark = tuple[int, int]  # (parent label j, slot s)


class NotStronglyTransitiveError(ValueError):
    pass


class BijectionNotGuaranteedWarning(UserWarning):
    """Raised as a warning when admissible trees are requested for an arrangement
    that is not strongly transitive; the output then need not index its faces."""


@dataclass(frozen=True)
class MTree:
    tree: Tree
    marks: frozenset[Mark] = field(default_factory=frozenset)

    def __post_init__(self):
        marks = frozenset((int(j), int(s)) for j, s in self.marks)
        object.__setattr__(self, "marks", marks)
        cadets = {(j, s): i for j, s, i in self.tree.cadet_edges()}
        for j, s in marks:
            if (j, s) not in cadets:
                raise TreeError(f"marked edge {(j, s)} is not a cadet edge")
            if s == 0 and not j < cadets[(j, s)]:
                raise TreeError(f"marked 0-cadet edge {(j, cadets[(j, s)])} must increase")

    @property
    def m(self) -> int:
        return self.tree.m

    @property
    def n(self) -> int:
        return self.tree.n

    @cached_property
    def block_data(self) -> BlockData:
        return block_data(self)

    def same_block(self, i: int, j: int) -> bool:
        bid = self.block_data.block_of
        return bid[i] == bid[j]

    def to_json(self) -> dict:
        return {"tree": self.tree.to_json(), "marks": [list(e) for e in sorted(self.marks)]}

    @classmethod
    def from_json(cls, data, m: Optional[int] = None) -> MTree:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(Tree.from_json(data["tree"], m), frozenset(tuple(e) for e in data["marks"]))

    def bracket(self) -> str:
        """Tree bracket form with marked cadets written as ``*label``."""
        marked_children = {self.tree.child(j, s) for j, s in self.marks}
        return _bracket(self.tree.root, marked_children)

    def sort_key(self):
        return (self.tree.bracket(), sorted(self.marks))

    def __str__(self) -> str:
        return self.bracket()


def _bracket(node, marked) -> str:
    if node is None:
        return "."
    label, children = node
    tag = f"*{label}" if label in marked else str(label)
    if all(c is None for c in children):
        return tag
    return f"{tag}({','.join(_bracket(c, marked) for c in children)})"


@dataclass(frozen=True)
class BlockData:
    """Blocks of a marked tree, each listed from its anchor (topmost node) down."""

    blocks: tuple[tuple[int, ...], ...]  # ordered by min label
    block_of: dict[int, int]  # label -> index into blocks
    offset: dict[int, int]  # label -> drift(label) - drift(anchor of its block)

    def anchor(self, k: int) -> int:
        return self.blocks[k][0]

    def cap(self, k: int) -> int:
        return self.blocks[k][-1]

    def shadow(self, k: int) -> frozenset[int]:
        return frozenset(self.offset[i] for i in self.blocks[k])

    @property
    def shadows(self) -> list[frozenset[int]]:
        return [self.shadow(k) for k in range(len(self.blocks))]


def block_data(t: MTree) -> BlockData:
    tree = t.tree
    marked_child = {}
    for j, s in t.marks:
        marked_child[j] = tree.child(j, s)
    marked_parent = {i: j for j, i in marked_child.items()}
    paths = []
    for label in tree.addresses:
        if label in marked_parent:
            continue
        path = [label]
        while path[-1] in marked_child:
            path.append(marked_child[path[-1]])
        paths.append(tuple(path))
    paths.sort(key=min)
    block_of, offset = {}, {}
    for k, path in enumerate(paths):
        base = tree.drift(path[0])
        for i in path:
            block_of[i] = k
            offset[i] = tree.drift(i) - base
    return BlockData(tuple(paths), block_of, offset)


def enumerate_marked(m: int, n: int) -> Iterator[MTree]:
    for tree in enumerate_trees(m, n):
        yield from marked_versions(tree)


def marked_versions(tree: Tree) -> Iterator[MTree]:
    """All valid markings of a tree."""
    eligible = [(j, s) for j, s, i in tree.cadet_edges() if s > 0 or j < i]
    for r in range(len(eligible) + 1):
        for marks in itertools.combinations(eligible, r):
            yield MTree(tree, frozenset(marks))


# ---------------------------------------------------------------------------
# admissibility


def _check_dims(t: MTree, A: Arrangement):
    if t.n != A.n:
        raise ValueError(f"tree has {t.n} nodes, arrangement lives in dimension {A.n}")


def block_is_connected(block: Sequence[int], A: Arrangement, drift) -> bool:
    """Connectivity of the graph joining i, j when {x_i - x_j = drift(i) - drift(j)} is in A."""
    block = list(block)
    if len(block) <= 1:
        return True
    seen = {block[0]}
    stack = [block[0]]
    while stack:
        i = stack.pop()
        for j in block:
            if j not in seen and A.contains(i, j, drift(i) - drift(j)):
                seen.add(j)
                stack.append(j)
    return len(seen) == len(block)


def is_A_connected(t: MTree, A: Arrangement) -> bool:
    _check_dims(t, A)
    return all(block_is_connected(b, A, t.tree.drift) for b in t.block_data.blocks)


def satisfies_cadet_condition(t: MTree, A: Arrangement) -> bool:
    _check_dims(t, A)
    tree, bd = t.tree, t.block_data
    for j, s, i in tree.cadet_edges():
        if (j, s) in t.marks:
            continue
        if s == 0 and i < j:
            continue
        drift = tree.drift
        if not any(
            A.contains(i2, j2, drift(i2) - drift(j2))
            for i2 in bd.blocks[bd.block_of[i]]
            for j2 in bd.blocks[bd.block_of[j]]
        ):
            return False
    return True


def is_admissible(t: MTree, A: Arrangement) -> bool:
    return is_A_connected(t, A) and satisfies_cadet_condition(t, A)


def enumerate_admissible(A: Arrangement, m: Optional[int] = None, *, strict: bool = True) -> Iterator[MTree]:
    """Marked (m, n)-trees that are A-connected and satisfy the A-cadet condition.

    With ``strict=False`` a non strongly transitive A is accepted and a
    :class:`BijectionNotGuaranteedWarning` is issued instead of an error.
    """
    if m is None:
        m = A.m
    if m < A.m:
        raise ValueError(f"arity parameter m={m} is below the largest offset {A.m} of A")
    if not is_strongly_transitive(A):
        if strict:
            raise NotStronglyTransitiveError(
                f"{A!r} is not strongly transitive; marked trees need not index its faces"
            )
        warnings.warn(
            "arrangement is not strongly transitive; admissible trees may not biject with faces",
            BijectionNotGuaranteedWarning,
            stacklevel=2,
        )
    for t in enumerate_marked(m, A.n):
        if is_admissible(t, A):
            yield t


# ---------------------------------------------------------------------------
# family-specific characterizations


def cat2shi_filter(t: MTree, I: Ideal | Iterable[tuple[int, int]], m: Optional[int] = None) -> bool:
    """Every m-child relation i = m-child(j) has (i, j) in the ideal."""
    m = t.m if m is None else m
    pairs = I if isinstance(I, Ideal) else set(map(tuple, I))
    tree = t.tree
    for j in tree.addresses:
        i = tree.child(j, m)
        if i is not None and (i, j) not in pairs:
            return False
    return True


def multi_reach(t: MTree, mvec: Sequence[int], j: int) -> int:
    tree = t.tree
    if j not in tree.addresses:
        raise ValueError(f"{j} is not a node of the tree")
    dj = tree.drift(j)
    return max(
        mvec[k - 1] + tree.drift(k) - dj
        for k in t.block_data.blocks[t.block_data.block_of[j]]
        if tree.is_ancestor(k, j)
    )


def multi_admissible(t: MTree, mvec: Sequence[int]) -> bool:
    tree = t.tree
    for j in tree.addresses:
        r = multi_reach(t, mvec, j)
        if any(tree.child(j, s) is not None for s in range(max(r + 1, 0), tree.m + 1)):
            return False
    return True


def semiorder_characterization(t: MTree) -> bool:
    """Admissibility for S = [-m, m] minus {0}, stated directly on blocks and 0-cadets."""
    tree, bd = t.tree, t.block_data
    for block in bd.blocks:
        if len(block) > 1 and all(bd.offset[a] == bd.offset[b] for a, b in zip(block, block[1:])):
            return False
    for j, s, i in tree.cadet_edges():
        if s == 0 and (j, s) not in t.marks:
            if len(bd.blocks[bd.block_of[i]]) == 1 and len(bd.blocks[bd.block_of[j]]) == 1 and not i < j:
                return False
    return True
