"""Natural growth of forests, iterated growth of primitives, and the
decomposition of the algebra into the images of the chain maps."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import Element, Tensor, as_element
from .hopf import _reduced_forest, counit, is_primitive, iterated_reduced
from .linalg import EchelonBasis
from .trees import Forest, graft_at_vertices

__all__ = [
    "graft",
    "graft_forests",
    "chain",
    "pi1",
    "deg_p",
    "ChainBasisElement",
    "ChainBasis",
    "chain_basis",
    "Decomposition",
    "decompose",
    "pi_j",
]


@lru_cache(maxsize=None)
def graft_forests(m: Forest, n: Forest) -> Element:
    """``M T N``: average over the vertices of N of appending every tree of M there."""
    if not n.trees:
        return Element.zero()
    out: dict[Forest, Fraction] = {}
    scale = Fraction(1, n.weight)
    trees = n.trees
    for pos, t in enumerate(trees):
        others = trees[:pos] + trees[pos + 1:]
        for grown in graft_at_vertices(t, m.trees):
            f = Forest(others + (grown,))
            out[f] = out.get(f, 0) + scale
    return Element._wrap(out)


def graft(x, y) -> Element:
    """Bilinear extension of :func:`graft_forests`; ``x`` is appended onto ``y``."""
    x, y = as_element(x), as_element(y)
    out: dict[Forest, Fraction] = {}
    for m, a in x.terms.items():
        for n, b in y.terms.items():
            ab = a * b
            for f, c in graft_forests(m, n).terms.items():
                s = out.get(f, 0) + ab * c
                if s:
                    out[f] = s
                else:
                    out.pop(f, None)
    return Element._wrap(out)


def chain(ps: Sequence, check: bool = True) -> Element:
    """``p_i T ... T p_1`` for ``ps = [p_i, ..., p_1]``, folded left to right."""
    if not ps:
        raise ValueError("a chain needs at least one factor")
    elems = [as_element(p) for p in ps]
    if check:
        for p in elems:
            if not is_primitive(p):
                raise ValueError(f"chain factor is not primitive: {p}")
    out = elems[0]
    for p in elems[1:]:
        out = graft(out, p)
    return out


_PI1_LOCK = threading.RLock()
_PI1_CACHE: dict[Forest, Element] = {}


def _pi1_forest(f: Forest) -> Element:
    hit = _PI1_CACHE.get(f)
    if hit is not None:
        return hit
    if not f.trees:
        res = Element.zero()
    else:
        acc: dict[Forest, Fraction] = {f: Fraction(1)}
        # group the reduced coproduct by right factor: sum_R (sum_L c L) T pi1(R)
        by_right: dict[Forest, dict[Forest, Fraction]] = {}
        for (left, right), c in _reduced_forest(f).items():
            by_right.setdefault(right, {})[left] = c
        for right in sorted(by_right, key=lambda r: r.weight):
            p = _pi1_forest(right)
            if not p:
                continue
            lefts = Element._wrap(by_right[right])
            for g, c in graft(lefts, p).terms.items():
                s = acc.get(g, 0) - c
                if s:
                    acc[g] = s
                else:
                    acc.pop(g, None)
        res = Element._wrap(acc)
    with _PI1_LOCK:
        _PI1_CACHE.setdefault(f, res)
    return res


def pi1(x) -> Element:
    """Projection onto the primitives, ``pi1(F) = F - sum F' T pi1(F'')``."""
    return as_element(x).map_linear(_pi1_forest)


def deg_p(x) -> int:
    """Least ``i`` with the ``i``-th iterated reduced coproduct of ``x - eps(x)1`` vanishing."""
    x = as_element(x)
    if not x:
        raise ValueError("deg_p is undefined for 0")
    y = x - Element.scalar(counit(x))
    if not y:
        return 0
    i = 1
    t = iterated_reduced(y, 1)
    while t:
        i += 1
        t = t.expand_slot(lambda f: _as_tensor(_reduced_forest(f)), 0)
    return i


def _as_tensor(d: dict):
    return Tensor._wrap(2, d)


# -- chain basis and decomposition -------------------------------------------------

@dataclass(frozen=True)
class ChainBasisElement:
    """``p_i T ... T p_1`` with each factor named ``(weight, index)`` in the primitive bases."""

    refs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.refs:
            raise ValueError("empty chain")

    @property
    def length(self) -> int:
        return len(self.refs)

    @property
    def weight(self) -> int:
        return sum(w for w, _ in self.refs)

    def factors(self) -> list[Element]:
        from .primitives import primitive_basis
        return [primitive_basis(w).elements[i] for w, i in self.refs]

    @property
    def value(self) -> Element:
        return chain_value(self.refs)


_CHAIN_LOCK = threading.RLock()
_CHAIN_VALUES: dict[tuple, Element] = {}


def chain_value(refs: tuple[tuple[int, int], ...]) -> Element:
    """Value of a chain over basis primitives, memoized by prefix."""
    hit = _CHAIN_VALUES.get(refs)
    if hit is not None:
        return hit
    from .primitives import primitive_basis
    w, i = refs[-1]
    last = primitive_basis(w).elements[i]
    if len(refs) == 1:
        res = last
    else:
        res = graft(chain_value(refs[:-1]), last)
    with _CHAIN_LOCK:
        _CHAIN_VALUES.setdefault(refs, res)
    return res


def _compositions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


@dataclass
class ChainBasis:
    """All chains over the primitive bases with total weight ``n``, and a solver."""

    weight: int
    elements: list[ChainBasisElement]
    _solver: EchelonBasis = field(repr=False)

    def coordinates(self, x: Element) -> dict[ChainBasisElement, Fraction]:
        coords = self._solver.coordinates(x.terms)
        if coords is None:
            raise ArithmeticError(f"element is not in the span of the weight-{self.weight} chains")
        return {self.elements[i]: c for i, c in sorted(coords.items())}

    def by_length(self, k: int) -> list[ChainBasisElement]:
        return [c for c in self.elements if c.length == k]


_BASIS_LOCK = threading.Lock()
_CHAIN_BASES: dict[int, ChainBasis] = {}


def chain_basis(n: int) -> ChainBasis:
    """Chain basis of the weight-``n`` slice; raises if the chains are dependent."""
    if n < 1:
        raise ValueError("weight must be >= 1")
    hit = _CHAIN_BASES.get(n)
    if hit is not None:
        return hit
    from .primitives import primitive_basis
    sizes = {w: len(primitive_basis(w).elements) for w in range(1, n + 1)}
    elements: list[ChainBasisElement] = []
    for comp in sorted(_compositions(n), key=lambda c: (len(c), c)):
        refs_list: list[tuple] = [()]
        for w in comp:
            refs_list = [r + ((w, i),) for r in refs_list for i in range(sizes[w])]
        elements.extend(ChainBasisElement(r) for r in refs_list)
    solver = EchelonBasis()
    for c in elements:
        if not solver.add(c.value.terms):
            raise ArithmeticError(f"chain vectors at weight {n} are dependent ({c.refs})")
    basis = ChainBasis(n, elements, solver)
    with _BASIS_LOCK:
        return _CHAIN_BASES.setdefault(n, basis)


@dataclass
class Decomposition:
    """``x = scalar * 1 + sum_j components[j]`` with ``components[j]`` in the image of F_j."""

    scalar: Fraction
    components: dict[int, Element]
    coordinates: dict[ChainBasisElement, Fraction]

    def total(self) -> Element:
        out = Element.scalar(self.scalar)
        for c in self.components.values():
            out = out + c
        return out


def decompose(x) -> Decomposition:
    x = as_element(x)
    scalar = counit(x)
    comps: dict[int, Element] = {}
    coords: dict[ChainBasisElement, Fraction] = {}
    for w, part in x.weight_split().items():
        if w == 0:
            continue
        cb = chain_basis(w)
        for c, a in cb.coordinates(part).items():
            coords[c] = a
            comps[c.length] = comps.get(c.length, Element.zero()) + c.value.scale(a)
    comps = {j: v for j, v in sorted(comps.items()) if v}
    return Decomposition(scalar, comps, coords)


def pi_j(x, j: int) -> Element:
    """Component of ``x`` in the image of ``F_j``."""
    if j < 1:
        raise ValueError("j must be >= 1")
    return decompose(x).components.get(j, Element.zero())
