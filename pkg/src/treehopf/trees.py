"""Rooted trees, forests, cuts and counting.

Trees are stored in a canonical form: the children of every vertex are
sorted by their bracket string (``"[" + children + "]"``), so two isomorphic
trees share one representation. Instances are interned, which makes equality
and hashing cheap.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "ParseError",
    "RootedTree",
    "Forest",
    "Cut",
    "EMPTY",
    "LEAF",
    "canonicalize",
    "parse_tree",
    "parse_forest",
    "ladder",
    "b_plus",
    "enumerate_trees",
    "enumerate_forests",
    "count_trees",
    "count_forests",
    "admissible_cuts",
    "all_cuts",
    "symmetry_factor",
]


class ParseError(ValueError):
    """Malformed tree, forest or element string."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        if text:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)


_INTERN: dict[str, "RootedTree"] = {}
_INTERN_LOCK = threading.Lock()


class RootedTree:
    """Canonical representative of an isomorphism class of rooted trees."""

    __slots__ = ("children", "weight", "key", "_hash", "__weakref__")

    children: tuple["RootedTree", ...]
    weight: int
    key: str

    def __new__(cls, children: Iterable["RootedTree"] = ()) -> "RootedTree":
        kids = tuple(sorted(children, key=_tree_key))
        key = "[" + "".join(c.key for c in kids) + "]"
        tree = _INTERN.get(key)
        if tree is not None:
            return tree
        with _INTERN_LOCK:
            tree = _INTERN.get(key)
            if tree is None:
                tree = object.__new__(cls)
                object.__setattr__(tree, "children", kids)
                object.__setattr__(tree, "weight", 1 + sum(c.weight for c in kids))
                object.__setattr__(tree, "key", key)
                object.__setattr__(tree, "_hash", hash(key))
                _INTERN[key] = tree
        return tree

    def __setattr__(self, name, value):
        raise AttributeError("RootedTree is immutable")

    def __reduce__(self):
        return (parse_tree, (self.key,))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if isinstance(other, RootedTree):
            return self.key == other.key
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "RootedTree") -> bool:
        return self.key < other.key

    def __le__(self, other: "RootedTree") -> bool:
        return self.key <= other.key

    def __str__(self) -> str:
        return self.key

    def __repr__(self) -> str:
        return f"RootedTree({self.key!r})"

    @property
    def fertility(self) -> int:
        return len(self.children)

    def is_ladder(self) -> bool:
        t = self
        while t.children:
            if len(t.children) > 1:
                return False
            t = t.children[0]
        return True

    def preorder(self) -> list[tuple[int, int]]:
        """Vertices as ``(vertex, parent)`` pairs in preorder; the root has parent -1."""
        out: list[tuple[int, int]] = []
        stack = [(self, -1)]
        while stack:
            node, parent = stack.pop()
            idx = len(out)
            out.append((idx, parent))
            for child in reversed(node.children):
                stack.append((child, idx))
        return out

    def vertex_children(self) -> list[list[int]]:
        """Child index lists, vertices numbered in preorder."""
        kids: list[list[int]] = [[] for _ in range(self.weight)]
        for v, p in self.preorder():
            if p >= 0:
                kids[p].append(v)
        return kids


def _tree_key(t: RootedTree) -> str:
    return t.key


LEAF = RootedTree()


class Forest:
    """Commutative monomial in rooted trees. The empty forest is the unit 1."""

    __slots__ = ("trees", "weight", "key", "_hash")

    trees: tuple[RootedTree, ...]
    weight: int
    key: str

    def __init__(self, trees: Iterable[RootedTree] = ()):
        ts = tuple(sorted(trees, key=_tree_key))
        object.__setattr__(self, "trees", ts)
        object.__setattr__(self, "weight", sum(t.weight for t in ts))
        key = " ".join(t.key for t in ts) if ts else "1"
        object.__setattr__(self, "key", key)
        object.__setattr__(self, "_hash", hash(key))

    def __setattr__(self, name, value):
        raise AttributeError("Forest is immutable")

    def __reduce__(self):
        return (Forest, (self.trees,))

    @classmethod
    def of(cls, *trees: RootedTree) -> "Forest":
        return cls(trees)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if isinstance(other, Forest):
            return self.key == other.key
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Forest") -> bool:
        return self.key < other.key

    def __le__(self, other: "Forest") -> bool:
        return self.key <= other.key

    def __len__(self) -> int:
        return len(self.trees)

    def __iter__(self) -> Iterator[RootedTree]:
        return iter(self.trees)

    def __bool__(self) -> bool:
        # truthiness means "not the unit"
        return bool(self.trees)

    def __mul__(self, other: "Forest") -> "Forest":
        if not other.trees:
            return self
        if not self.trees:
            return other
        return Forest(self.trees + other.trees)

    def is_tree(self) -> bool:
        return len(self.trees) == 1

    def __str__(self) -> str:
        return self.key

    def __repr__(self) -> str:
        return f"Forest({self.key!r})"


EMPTY = Forest()


# -- parsing -----------------------------------------------------------------

def _parse_tree_at(text: str, pos: int) -> tuple[RootedTree, int]:
    if pos >= len(text) or text[pos] != "[":
        raise ParseError("expected '['", text, pos)
    pos += 1
    kids = []
    while True:
        if pos >= len(text):
            raise ParseError("unterminated tree", text, pos)
        ch = text[pos]
        if ch == "]":
            return RootedTree(kids), pos + 1
        if ch == "[":
            child, pos = _parse_tree_at(text, pos)
            kids.append(child)
        else:
            raise ParseError(f"unexpected character {ch!r}", text, pos)


def parse_tree(text: str) -> RootedTree:
    """Parse ``T ::= "[" T* "]"``; any child order is accepted."""
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    try:
        tree, end = _parse_tree_at(s, 0)
    except ParseError as exc:
        raise ParseError(str(exc).split(" at position")[0], text, exc.position + offset) from None
    if end != len(s):
        raise ParseError("trailing characters", text, end + offset)
    return tree


def parse_forest(text: str) -> Forest:
    """Parse a space separated list of trees, or ``"1"`` for the empty forest."""
    s = text.strip()
    if s == "1" or s == "":
        return EMPTY
    shift = len(text) - len(text.lstrip())
    trees = []
    pos = 0
    while pos < len(s):
        if s[pos] == " ":
            pos += 1
            continue
        try:
            tree, pos = _parse_tree_at(s, pos)
        except ParseError as exc:
            raise ParseError(str(exc).split(" at position")[0], text, shift + exc.position) from None
        trees.append(tree)
    return Forest(trees)


def canonicalize(raw) -> RootedTree:
    """Canonical tree from a nested-list structure (each vertex = list of children)
    or from a bracket string with arbitrary child order."""
    if isinstance(raw, RootedTree):
        return raw
    if isinstance(raw, str):
        return parse_tree(raw)
    return RootedTree(canonicalize(c) for c in raw)


# -- constructions -------------------------------------------------------------

def ladder(i: int) -> RootedTree:
    if i < 1:
        raise ValueError(f"ladder weight must be >= 1, got {i}")
    t = LEAF
    for _ in range(i - 1):
        t = RootedTree((t,))
    return t


def b_plus(f: Forest) -> RootedTree:
    """Graft every tree of ``f`` onto a new common root."""
    return RootedTree(f.trees)


@lru_cache(maxsize=None)
def _trees_of_weight(n: int) -> tuple[RootedTree, ...]:
    return tuple(sorted((b_plus(f) for f in _forests_of_weight(n - 1)), key=_tree_key))


@lru_cache(maxsize=None)
def _forests_of_weight(n: int) -> tuple[Forest, ...]:
    if n == 0:
        return (EMPTY,)
    # multisets of trees, emitted with nonincreasing (weight, index) to avoid repeats
    pool = [(w, i, t) for w in range(1, n + 1) for i, t in enumerate(_trees_of_weight(w))]
    out: list[Forest] = []

    def rec(remaining: int, max_pos: int, acc: list[RootedTree]):
        if remaining == 0:
            out.append(Forest(acc))
            return
        for pos in range(max_pos, -1, -1):
            w, _, t = pool[pos]
            if w > remaining:
                continue
            acc.append(t)
            rec(remaining - w, pos, acc)
            acc.pop()

    rec(n, len(pool) - 1, [])
    return tuple(sorted(out, key=lambda f: f.key))


def enumerate_trees(n: int) -> list[RootedTree]:
    """All trees of weight ``n``, sorted by canonical string."""
    if n < 1:
        raise ValueError(f"tree weight must be >= 1, got {n}")
    return list(_trees_of_weight(n))


def enumerate_forests(n: int) -> list[Forest]:
    """All forests of weight ``n``, sorted by canonical string."""
    if n < 0:
        raise ValueError(f"forest weight must be >= 0, got {n}")
    return list(_forests_of_weight(n))


_COUNT_LOCK = threading.Lock()
_TREE_COUNTS: list[int] = [0, 1]  # index = weight
_FOREST_COUNTS: list[int] = [1]


def _extend_counts(n: int) -> None:
    # forests(m) is the Euler transform of trees; trees(m + 1) = forests(m)
    with _COUNT_LOCK:
        while len(_FOREST_COUNTS) <= n:
            m = len(_FOREST_COUNTS)
            total = 0
            for k in range(1, m + 1):
                c = sum(d * _TREE_COUNTS[d] for d in range(1, k + 1) if k % d == 0)
                total += c * _FOREST_COUNTS[m - k]
            assert total % m == 0
            _FOREST_COUNTS.append(total // m)
            _TREE_COUNTS.append(_FOREST_COUNTS[m])


def count_forests(n: int) -> int:
    """Number of forests of weight ``n`` (the dimension of H_n)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    _extend_counts(n)
    return _FOREST_COUNTS[n]


def count_trees(n: int) -> int:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 0
    _extend_counts(n - 1)
    return _TREE_COUNTS[n]


# -- cuts ----------------------------------------------------------------------

@dataclass(frozen=True)
class Cut:
    """A set of removed edges. An edge is named by its lower vertex (preorder index)."""

    edges: frozenset[int]
    crown: Forest
    trunk: RootedTree

    @property
    def size(self) -> int:
        return len(self.edges)


def _split(tree: RootedTree, kids: list[list[int]], cut: frozenset[int]) -> Cut:
    def build(v: int) -> RootedTree:
        return RootedTree(build(c) for c in kids[v] if c not in cut)

    crown = Forest(build(v) for v in cut)
    return Cut(cut, crown, build(0))


@lru_cache(maxsize=None)
def _admissible_cuts(tree: RootedTree) -> tuple[Cut, ...]:
    kids = tree.vertex_children()
    cuts: list[frozenset[int]] = []

    # antichains of non-root vertices; a cut vertex hides its subtree
    def rec(frontier: list[int], chosen: list[int]):
        if not frontier:
            if chosen:
                cuts.append(frozenset(chosen))
            return
        v, rest = frontier[0], frontier[1:]
        chosen.append(v)
        rec(rest, chosen)
        chosen.pop()
        rec(kids[v] + rest, chosen)

    rec(list(kids[0]), [])
    return tuple(_split(tree, kids, c) for c in cuts)


@lru_cache(maxsize=None)
def _all_cuts(tree: RootedTree) -> tuple[Cut, ...]:
    kids = tree.vertex_children()
    edges = range(1, tree.weight)
    out = []
    for k in range(1, tree.weight):
        for chosen in combinations(edges, k):
            out.append(_split(tree, kids, frozenset(chosen)))
    return tuple(out)


def admissible_cuts(t: RootedTree) -> list[Cut]:
    """Nonempty admissible cuts: no root-to-vertex path meets two removed edges."""
    return list(_admissible_cuts(t))


def all_cuts(t: RootedTree) -> list[Cut]:
    """Every nonempty subset of edges."""
    return list(_all_cuts(t))


def is_admissible(t: RootedTree, edges: Iterable[int]) -> bool:
    parent = dict(t.preorder())
    chosen = set(edges)
    for v in chosen:
        p = parent[v]
        while p > 0:
            if p in chosen:
                return False
            p = parent[p]
    return True


@lru_cache(maxsize=None)
def symmetry_factor(t: RootedTree) -> int:
    """Order of the automorphism group of ``t``."""
    out = 1
    counts: dict[RootedTree, int] = {}
    for c in t.children:
        counts[c] = counts.get(c, 0) + 1
        out *= symmetry_factor(c)
    for m in counts.values():
        for k in range(2, m + 1):
            out *= k
    return out


def graft_at_vertices(t: RootedTree, extra: Sequence[RootedTree]) -> list[RootedTree]:
    """The trees obtained by attaching all of ``extra`` to each vertex of ``t``, in preorder."""
    kids = t.vertex_children()

    def build(v: int, target: int) -> RootedTree:
        children = [build(c, target) for c in kids[v]]
        if v == target:
            children.extend(extra)
        return RootedTree(children)

    return [build(0, v) for v in range(t.weight)]
