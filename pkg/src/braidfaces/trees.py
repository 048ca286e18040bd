"""Labeled rooted (m+1)-ary trees.

A tree is stored as nested tuples: a node is ``(label, (c_0, ..., c_m))`` where
each child is either a node or ``None`` (a leaf).  Vertices, leaves included,
are addressed by the tuple of child slots followed from the root.
"""

from __future__ import annotations

import enum
import functools
import itertools
import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional

Address = tuple[int, ...]
Node = tuple  # (label, children)


class TreeError(ValueError):
    pass


class Order(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def drift(address: Address) -> int:
    return sum(address)


def order_key(address: Address) -> tuple:
    """Sort key realizing the vertex order of a tree on addresses.

    Smaller drift first; at equal drift an ancestor precedes its descendants
    and, at the first differing slot, the larger slot comes first.
    """
    return (sum(address), tuple(-s for s in address))


@dataclass(frozen=True)
class Tree:
    m: int
    root: Optional[Node]

    def __post_init__(self):
        if self.m < 0:
            raise TreeError(f"negative arity parameter {self.m}")
        labels = []
        stack = [self.root] if self.root is not None else []
        while stack:
            node = stack.pop()
            label, children = node
            if len(children) != self.m + 1:
                raise TreeError(f"node {label} has {len(children)} children, expected {self.m + 1}")
            labels.append(label)
            stack.extend(c for c in children if c is not None)
        if sorted(labels) != list(range(1, len(labels) + 1)):
            raise TreeError(f"labels {sorted(labels)} are not a permutation of [n]")

    @cached_property
    def n(self) -> int:
        return len(self.addresses)

    @cached_property
    def addresses(self) -> dict[int, Address]:
        out = {}
        stack = [(self.root, ())] if self.root is not None else []
        while stack:
            (label, children), addr = stack.pop()
            out[label] = addr
            for s, c in enumerate(children):
                if c is not None:
                    stack.append((c, addr + (s,)))
        return out

    @cached_property
    def _children(self) -> dict[int, tuple[Optional[int], ...]]:
        out = {}
        stack = [self.root] if self.root is not None else []
        while stack:
            label, children = stack.pop()
            out[label] = tuple(None if c is None else c[0] for c in children)
            stack.extend(c for c in children if c is not None)
        return out

    @cached_property
    def parent(self) -> dict[int, tuple[int, int]]:
        """Map node -> (parent label, slot) for every non-root node."""
        return {
            c: (j, s) for j, cs in self._children.items() for s, c in enumerate(cs) if c is not None
        }

    @property
    def root_label(self) -> Optional[int]:
        return None if self.root is None else self.root[0]

    def child(self, j: int, s: int) -> Optional[int]:
        """Label of the s-child of node j, or None when it is a leaf."""
        return self._children[j][s]

    def children(self, j: int) -> tuple[Optional[int], ...]:
        return self._children[j]

    def drift(self, j: int) -> int:
        return sum(self.addresses[j])

    def child_address(self, j: int, s: int) -> Address:
        return self.addresses[j] + (s,)

    def is_ancestor(self, a: int, b: int) -> bool:
        """True when node a is an ancestor of node b (a node is its own ancestor)."""
        pa, pb = self.addresses[a], self.addresses[b]
        return pb[: len(pa)] == pa

    def compare(self, v: Address, w: Address) -> Order:
        for addr in (v, w):
            if not self.has_vertex(addr):
                raise TreeError(f"no vertex at address {addr}")
        kv, kw = order_key(v), order_key(w)
        if kv == kw:
            return Order.EQUAL
        return Order.LESS if kv < kw else Order.GREATER

    def has_vertex(self, addr: Address) -> bool:
        node = self.root
        if node is None:
            return addr == ()
        for k, s in enumerate(addr):
            if node is None or not 0 <= s <= self.m:
                return False
            node = node[1][s]
        return True

    def vertices(self) -> list[Address]:
        """All vertex addresses (nodes and leaves)."""
        out = []
        stack = [(self.root, ())]
        while stack:
            node, addr = stack.pop()
            out.append(addr)
            if node is not None:
                stack.extend((c, addr + (s,)) for s, c in enumerate(node[1]))
        return out

    def cadet_edges(self) -> list[tuple[int, int, int]]:
        """Triples ``(j, s, i)`` with ``i`` the s-cadet of ``j``, sorted by ``j``."""
        out = []
        for j in sorted(self._children):
            cs = self._children[j]
            for s in range(self.m, -1, -1):
                if cs[s] is not None:
                    out.append((j, s, cs[s]))
                    break
        return out

    def cadet(self, j: int) -> Optional[tuple[int, int]]:
        cs = self._children[j]
        for s in range(self.m, -1, -1):
            if cs[s] is not None:
                return s, cs[s]
        return None

    # -- serialization -------------------------------------------------------

    def to_json(self):
        return _node_to_json(self.root)

    @classmethod
    def from_json(cls, data, m: Optional[int] = None) -> Tree:
        if isinstance(data, str):
            data = json.loads(data)
        if data is None:
            if m is None:
                raise TreeError("the empty tree needs an explicit m")
            return cls(m, None)
        root = _node_from_json(data)
        inferred = len(root[1]) - 1
        if m is not None and m != inferred:
            raise TreeError(f"tree JSON has arity {inferred + 1}, expected {m + 1}")
        return cls(inferred, root)

    def bracket(self) -> str:
        """Compact text form, e.g. ``1(.,2)``; a node with only leaf children is its label."""
        return _bracket(self.root)

    @classmethod
    def from_bracket(cls, text: str, m: int) -> Tree:
        text = text.replace(" ", "")
        if text == ".":
            return cls(m, None)
        node, pos = _parse_bracket(text, 0, m)
        if pos != len(text):
            raise TreeError(f"trailing characters in {text!r}")
        return cls(m, node)

    def __str__(self) -> str:
        return self.bracket()


def _node_to_json(node):
    if node is None:
        return None
    return [node[0], [_node_to_json(c) for c in node[1]]]


def _node_from_json(data):
    if data is None:
        return None
    try:
        label, children = data
    except (TypeError, ValueError):
        raise TreeError(f"malformed node {data!r}") from None
    return (int(label), tuple(_node_from_json(c) for c in children))


def _bracket(node) -> str:
    if node is None:
        return "."
    label, children = node
    if all(c is None for c in children):
        return str(label)
    return f"{label}({','.join(_bracket(c) for c in children)})"


def _parse_bracket(text, pos, m):
    if text[pos] == ".":
        return None, pos + 1
    end = pos
    while end < len(text) and text[end].isdigit():
        end += 1
    if end == pos:
        raise TreeError(f"expected a label at position {pos} of {text!r}")
    label = int(text[pos:end])
    if end < len(text) and text[end] == "(":
        children = []
        pos = end + 1
        while True:
            child, pos = _parse_bracket(text, pos, m)
            children.append(child)
            if text[pos] == ",":
                pos += 1
            elif text[pos] == ")":
                pos += 1
                break
            else:
                raise TreeError(f"unexpected {text[pos]!r} at position {pos}")
        if len(children) != m + 1:
            raise TreeError(f"node {label} has {len(children)} children, expected {m + 1}")
        return (label, tuple(children)), pos
    return (label, (None,) * (m + 1)), end


# ---------------------------------------------------------------------------
# enumeration


def count_trees(m: int, n: int) -> int:
    return math.factorial(n) * math.comb((m + 1) * n, n) // (m * n + 1)


@functools.lru_cache(maxsize=None)
def _shapes(m: int, k: int) -> tuple:
    """Unlabeled (m+1)-ary shapes with k nodes; nodes are ``(None, children)``."""
    if k == 0:
        return (None,)
    return tuple(
        (None, kids)
        for sizes in _compositions(k - 1, m + 1)
        for kids in itertools.product(*(_shapes(m, c) for c in sizes))
    )


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _label(shape, labels: Iterator[int]):
    if shape is None:
        return None
    label = next(labels)
    return (label, tuple(_label(c, labels) for c in shape[1]))


def enumerate_trees(m: int, n: int) -> Iterator[Tree]:
    """Every (m, n)-tree exactly once: each shape, then each labeling in preorder."""
    if m < 0 or n < 0:
        raise TreeError(f"m and n must be non-negative, got m={m}, n={n}")
    for shape in _shapes(m, n):
        for perm in itertools.permutations(range(1, n + 1)):
            yield Tree(m, _label(shape, iter(perm)))
