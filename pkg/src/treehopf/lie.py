"""The Lie algebra spanned by the Z_t, words in its enveloping algebra, and
the pairing of those words with the tree Hopf algebra."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .algebra import as_element, render_coefficient
from .growth import graft_forests
from .hopf import _coproduct_forest, counit
from .trees import EMPTY, Forest, ParseError, RootedTree, admissible_cuts, enumerate_trees, parse_tree, symmetry_factor

__all__ = [
    "LieElement",
    "Word",
    "n_count",
    "single_cut_table",
    "bracket",
    "bracket_via_graft",
    "pair",
    "pair_left",
    "pair_right",
    "parse_word",
    "render_word",
]


class LieElement:
    """Finite combination of the generators ``Z_t``. Treated as immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[RootedTree, object] | None = None):
        self.terms: dict[RootedTree, Fraction] = {}
        for t, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[t] = c

    @classmethod
    def generator(cls, t: RootedTree | str) -> "LieElement":
        if isinstance(t, str):
            t = parse_tree(t)
        return cls({t: 1})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, LieElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LieElement") -> "LieElement":
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, 0) + c
        return LieElement(out)

    def __neg__(self) -> "LieElement":
        return LieElement({t: -c for t, c in self.terms.items()})

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def scale(self, c) -> "LieElement":
        return LieElement({t: c * v for t, v in self.terms.items()})

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t, c in sorted(self.terms.items()):
            coef = render_coefficient(c)
            parts.append(f"Z{t.key}" if coef == "1" else f"{coef} Z{t.key}")
        return " + ".join(parts)

    __str__ = render

    def __repr__(self) -> str:
        return f"LieElement({self.render()!r})"


@lru_cache(maxsize=None)
def single_cut_table(t: RootedTree) -> dict[tuple[RootedTree, RootedTree], int]:
    """``(crown, trunk) -> number of single-edge cuts of t`` producing that pair."""
    out: dict[tuple[RootedTree, RootedTree], int] = {}
    for cut in admissible_cuts(t):
        if cut.size == 1:
            key = (cut.crown.trees[0], cut.trunk)
            out[key] = out.get(key, 0) + 1
    return out


def n_count(t1: RootedTree, t2: RootedTree, t: RootedTree) -> int:
    """Number of elementary cuts of ``t`` with crown ``t1`` and trunk ``t2``."""
    if t.weight != t1.weight + t2.weight:
        return 0
    return single_cut_table(t).get((t1, t2), 0)


def _targets(t1: RootedTree, t2: RootedTree) -> set[RootedTree]:
    # every tree with an elementary cut (t1, t2) arises by attaching t1 to a vertex of t2
    f = graft_forests(Forest((t1,)), Forest((t2,)))
    return {g.trees[0] for g in f.terms}


@lru_cache(maxsize=None)
def _bracket_gen(t1: RootedTree, t2: RootedTree) -> dict[RootedTree, Fraction]:
    out: dict[RootedTree, Fraction] = {}
    for t in _targets(t1, t2):
        out[t] = out.get(t, 0) + n_count(t1, t2, t)
    for t in _targets(t2, t1):
        out[t] = out.get(t, 0) - n_count(t2, t1, t)
    return {t: Fraction(c) for t, c in out.items() if c}


def bracket(a: LieElement, b: LieElement) -> LieElement:
    """``[Z_t1, Z_t2] = sum_t n(t1,t2;t) Z_t - sum_t n(t2,t1;t) Z_t``, bilinearly."""
    out: dict[RootedTree, Fraction] = {}
    for t1, x in a.terms.items():
        for t2, y in b.terms.items():
            for t, c in _bracket_gen(t1, t2).items():
                out[t] = out.get(t, 0) + x * y * c
    return LieElement(out)


def _grafted_count(t1: RootedTree, t2: RootedTree) -> dict[RootedTree, Fraction]:
    # weight(t2) * (t1 T t2) counts attachment points; converting to cut counts
    # multiplies by sigma(t) / (sigma(t1) sigma(t2))
    g = graft_forests(Forest((t1,)), Forest((t2,)))
    out = {}
    for f, c in g.terms.items():
        t = f.trees[0]
        out[t] = c * t2.weight * Fraction(symmetry_factor(t), symmetry_factor(t1) * symmetry_factor(t2))
    return out


def bracket_via_graft(a: LieElement, b: LieElement) -> LieElement:
    """Same bracket computed from the grafting map, as an independent path."""
    out: dict[RootedTree, Fraction] = {}
    for t1, x in a.terms.items():
        for t2, y in b.terms.items():
            for t, c in _grafted_count(t1, t2).items():
                out[t] = out.get(t, 0) + x * y * c
            for t, c in _grafted_count(t2, t1).items():
                out[t] = out.get(t, 0) - x * y * c
    return LieElement(out)


# -- enveloping algebra words and the pairing -------------------------------------

Word = tuple  # tuple of RootedTree; () is the unit


def parse_word(text: str) -> Word:
    """``"t1.t2.t3"`` -> ``(t1, t2, t3)``; ``"1"`` or ``""`` is the empty word."""
    text = text.strip()
    if text in ("", "1"):
        return ()
    out = []
    pos = 0
    for piece in text.split("."):
        try:
            out.append(parse_tree(piece.strip()))
        except ParseError as exc:
            raise ParseError(str(exc).split(" at position")[0], text, pos + exc.position) from None
        pos += len(piece) + 1
    return tuple(out)


def render_word(w: Sequence[RootedTree]) -> str:
    return ".".join(t.key for t in w) if w else "1"


def _pair_forest_full(w: Word, f: Forest) -> Fraction:
    if not w:
        return Fraction(int(f == EMPTY))
    if sum(t.weight for t in w) != f.weight:
        return Fraction(0)
    if len(w) == 1:
        return Fraction(int(f.is_tree() and f.trees[0] == w[0]))
    return _pair_left_forest(w, f)


@lru_cache(maxsize=None)
def _pair_left_forest(w: Word, f: Forest) -> Fraction:
    # <w_1..w_k, F> = sum <w_1..w_{k-1}, F'> <Z_{w_k}, F''>
    head, last = w[:-1], w[-1]
    total = Fraction(0)
    target = Forest((last,))
    for (left, right), c in _coproduct_forest(f).items():
        if right == target:
            total += c * _pair_forest_full(head, left)
    return total


@lru_cache(maxsize=None)
def _pair_right_forest(w: Word, f: Forest) -> Fraction:
    if not w:
        return Fraction(int(f == EMPTY))
    if sum(t.weight for t in w) != f.weight:
        return Fraction(0)
    if len(w) == 1:
        return Fraction(int(f.is_tree() and f.trees[0] == w[0]))
    first, tail = w[0], w[1:]
    total = Fraction(0)
    target = Forest((first,))
    for (left, right), c in _coproduct_forest(f).items():
        if left == target:
            total += c * _pair_right_forest(tail, right)
    return total


def _normalize_word(w) -> Word:
    if isinstance(w, str):
        return parse_word(w)
    return tuple(w)


def pair(w, x) -> Fraction:
    """``<Z_t1 ... Z_tk, x>``: coefficient of ``t1 (x) ... (x) tk`` in the iterated coproduct."""
    w = _normalize_word(w)
    x = as_element(x)
    if not w:
        return counit(x)
    return sum((c * _pair_forest_full(w, f) for f, c in x.terms.items()), Fraction(0))


def pair_left(w, x) -> Fraction:
    """The pairing peeling letters off the right end of the word."""
    return pair(w, x)


def pair_right(w, x) -> Fraction:
    """The pairing peeling letters off the left end of the word."""
    w = _normalize_word(w)
    x = as_element(x)
    return sum((c * _pair_right_forest(w, f) for f, c in x.terms.items()), Fraction(0))


def words_of_weight(n: int, max_len: int | None = None) -> Iterable[Word]:
    """All words whose letter weights sum to ``n``."""
    def rec(remaining: int, acc: tuple):
        if remaining == 0:
            yield acc
            return
        if max_len is not None and len(acc) >= max_len:
            return
        for w in range(1, remaining + 1):
            for t in enumerate_trees(w):
                yield from rec(remaining - w, acc + (t,))

    yield from rec(n, ())
