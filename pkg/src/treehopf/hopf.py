"""Coproduct, counit, reduced coproducts and antipode of the tree Hopf algebra."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .algebra import Element, Tensor, as_element
from .trees import EMPTY, Forest, RootedTree, admissible_cuts, all_cuts

__all__ = [
    "coproduct",
    "coproduct_forest",
    "counit",
    "reduced_coproduct",
    "iterated_reduced",
    "iterated_coproduct",
    "antipode",
    "antipode_recursive",
    "is_primitive",
]

_ONE = Fraction(1)


@lru_cache(maxsize=None)
def _coproduct_tree(t: RootedTree) -> dict:
    single = Forest((t,))
    out: dict[tuple[Forest, Forest], Fraction] = {
        (EMPTY, single): _ONE,
        (single, EMPTY): _ONE,
    }
    for cut in admissible_cuts(t):
        key = (cut.crown, Forest((cut.trunk,)))
        out[key] = out.get(key, 0) + 1
    return out


def _tensor_mult(a: dict, b: dict) -> dict:
    out: dict = {}
    for (l1, r1), x in a.items():
        for (l2, r2), y in b.items():
            k = (l1 * l2, r1 * r2)
            out[k] = out.get(k, 0) + x * y
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _coproduct_forest(f: Forest) -> dict:
    if not f.trees:
        return {(EMPTY, EMPTY): _ONE}
    if len(f.trees) == 1:
        return _coproduct_tree(f.trees[0])
    first = Forest(f.trees[:1])
    rest = Forest(f.trees[1:])
    return _tensor_mult(_coproduct_forest(first), _coproduct_forest(rest))


def coproduct_forest(f: Forest) -> Tensor:
    return Tensor._wrap(2, dict(_coproduct_forest(f)))


def coproduct(x) -> Tensor:
    """Algebra morphism; on a tree ``1 (x) t + t (x) 1 + sum over admissible cuts``."""
    x = as_element(x)
    out: dict = {}
    for f, c in x.terms.items():
        for k, v in _coproduct_forest(f).items():
            s = out.get(k, 0) + c * v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return Tensor._wrap(2, out)


def counit(x) -> Fraction:
    return as_element(x).terms.get(EMPTY, Fraction(0))


@lru_cache(maxsize=None)
def _reduced_forest(f: Forest) -> dict:
    out = dict(_coproduct_forest(f))
    for k in ((EMPTY, f), (f, EMPTY)):
        s = out.get(k, 0) - 1
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def reduced_coproduct(x) -> Tensor:
    """``Delta(x) - 1 (x) x - x (x) 1``."""
    x = as_element(x)
    out: dict = {}
    for f, c in x.terms.items():
        for k, v in _reduced_forest(f).items():
            s = out.get(k, 0) + c * v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return Tensor._wrap(2, out)


def _reduced_as_tensor(f: Forest) -> Tensor:
    return Tensor._wrap(2, _reduced_forest(f))


def iterated_reduced(x, k: int) -> Tensor:
    """``k = 0``: ``x - eps(x) 1`` as a rank-1 tensor; otherwise ``(D^{k-1} (x) Id) D``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    x = as_element(x)
    if k == 0:
        y = x - Element.scalar(counit(x))
        return Tensor._wrap(1, {(f,): c for f, c in y.terms.items()})
    t = reduced_coproduct(x)
    for _ in range(k - 1):
        if not t:
            return Tensor.zero(t.rank + 1)
        t = t.expand_slot(_reduced_as_tensor, 0)
    return t


def iterated_coproduct(x, k: int) -> Tensor:
    """Full coproduct iterated into ``k + 1`` factors (``k = 0`` is the identity)."""
    x = as_element(x)
    t = Tensor._wrap(1, {(f,): c for f, c in x.terms.items()})
    for _ in range(k):
        t = t.expand_slot(coproduct_forest, 0)
    return t


@lru_cache(maxsize=None)
def _antipode_tree(t: RootedTree) -> Element:
    # the empty cut contributes -t
    out: dict[Forest, Fraction] = {Forest((t,)): Fraction(-1)}
    for cut in all_cuts(t):
        f = cut.crown * Forest((cut.trunk,))
        sign = 1 if cut.size % 2 else -1
        s = out.get(f, 0) + sign
        if s:
            out[f] = s
        else:
            out.pop(f, None)
    return Element._wrap(out)


@lru_cache(maxsize=None)
def _antipode_forest(f: Forest) -> Element:
    out = Element.one()
    for t in f.trees:
        out = out * _antipode_tree(t)
    return out


def antipode(x) -> Element:
    """Signed sum over all cuts, extended multiplicatively."""
    return as_element(x).map_linear(_antipode_forest)


@lru_cache(maxsize=None)
def _antipode_tree_rec(t: RootedTree) -> Element:
    # S(t) = -t - sum_C S(P^C(t)) R^C(t), from m (S (x) Id) Delta = eps
    out = -Element.basis(t)
    for cut in admissible_cuts(t):
        s = Element.one()
        for u in cut.crown.trees:
            s = s * _antipode_tree_rec(u)
        out = out - s * Element.basis(cut.trunk)
    return out


def antipode_recursive(x) -> Element:
    """Antipode from the convolution recursion; independent of the all-cuts formula."""
    def on_forest(f: Forest) -> Element:
        out = Element.one()
        for t in f.trees:
            out = out * _antipode_tree_rec(t)
        return out

    return as_element(x).map_linear(on_forest)


def is_primitive(x) -> bool:
    x = as_element(x)
    return counit(x) == 0 and not reduced_coproduct(x)
