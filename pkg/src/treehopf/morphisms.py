"""The associated graded algebra of the deg_p filtration, endomorphism
families, and an explicit isomorphism between the two Hopf structures.

Chains are written as tuples of references ``(weight, index)`` into the
primitive bases, leftmost factor first: ``(p_i, ..., p_1)`` denotes
``p_i T ... T p_1``. The empty tuple is the unit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping, Sequence

from .algebra import Element, Tensor, as_element, render_coefficient
from .growth import _compositions, chain_basis, chain_value, decompose, deg_p, graft, pi1, pi_j
from .hopf import _reduced_forest, coproduct, counit, is_primitive
from .linalg import EchelonBasis, is_invertible as invertible
from .primitives import primitive_basis, primitive_coordinates
from .trees import EMPTY, Forest, RootedTree, count_trees, enumerate_forests, enumerate_trees

__all__ = [
    "GrElement",
    "shuffles",
    "shuffle_product",
    "gr_coproduct",
    "gr_antipode",
    "leading_term_check",
    "TreeFamily",
    "HopfEndomorphism",
    "phi_family",
    "recover_family",
    "UFamily",
    "phi_u",
    "is_invertible",
    "extend_to_bialgebra",
    "XiResult",
    "xi_isomorphism",
]

Word = tuple  # tuple of (weight, index) references


def _word_weight(w: Word) -> int:
    return sum(r[0] for r in w)


class GrElement:
    """Finite combination of chain words; the empty word is the unit."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, object] | None = None):
        self.terms: dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[tuple(w)] = c

    @classmethod
    def word(cls, *refs) -> "GrElement":
        return cls({tuple(refs): 1})

    @classmethod
    def one(cls) -> "GrElement":
        return cls({(): 1})

    @classmethod
    def from_element(cls, x) -> "GrElement":
        """Coordinates of ``x`` over the chain bases."""
        d = decompose(as_element(x))
        terms = {c.refs: a for c, a in d.coordinates.items()}
        if d.scalar:
            terms[()] = d.scalar
        return cls(terms)

    def to_element(self) -> Element:
        out = Element.zero()
        for w, c in self.terms.items():
            out = out + (Element.scalar(c) if not w else chain_value(w).scale(c))
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, GrElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "GrElement") -> "GrElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GrElement(out)

    def __neg__(self) -> "GrElement":
        return GrElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "GrElement") -> "GrElement":
        return self + (-other)

    def scale(self, c) -> "GrElement":
        return GrElement({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other: "GrElement") -> "GrElement":
        return shuffle_product(self, other)

    def length_split(self) -> dict[int, "GrElement"]:
        out: dict[int, dict] = {}
        for w, c in self.terms.items():
            out.setdefault(len(w), {})[w] = c
        return {k: GrElement(v) for k, v in sorted(out.items())}

    def max_weight(self) -> int:
        return max((_word_weight(w) for w in self.terms), default=0)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            body = " T ".join(f"p{a}.{b}" for a, b in w) if w else "1"
            coef = render_coefficient(c)
            parts.append(body if coef == "1" else f"{coef} {body}")
        return " + ".join(parts)

    __str__ = render

    def __repr__(self) -> str:
        return f"GrElement({self.render()!r})"


def shuffles(a: Word, b: Word) -> list[Word]:
    """All interleavings of ``a`` and ``b`` keeping each internal order (with multiplicity)."""
    n = len(a) + len(b)
    out = []
    for pos in combinations(range(n), len(a)):
        chosen = set(pos)
        ia = ib = 0
        w = []
        for k in range(n):
            if k in chosen:
                w.append(a[ia])
                ia += 1
            else:
                w.append(b[ib])
                ib += 1
        out.append(tuple(w))
    return out


def shuffle_product(x: GrElement, y: GrElement) -> GrElement:
    """The product of the graded algebra: shuffle of chain words."""
    out: dict[Word, Fraction] = {}
    for a, c in x.terms.items():
        for b, d in y.terms.items():
            for w in shuffles(a, b):
                out[w] = out.get(w, 0) + c * d
    return GrElement(out)


def gr_coproduct(x: GrElement) -> dict[tuple[Word, Word], Fraction]:
    """Deconcatenation; the left factor is the written prefix."""
    out: dict[tuple[Word, Word], Fraction] = {}
    for w, c in x.terms.items():
        for k in range(len(w) + 1):
            key = (w[:k], w[k:])
            out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def gr_counit(x: GrElement) -> Fraction:
    return x.terms.get((), Fraction(0))


def gr_antipode(x: GrElement) -> GrElement:
    """``S_*(p_j T ... T p_1) = (-1)^j p_1 T ... T p_j``."""
    return GrElement({tuple(reversed(w)): c * (-1) ** len(w) for w, c in x.terms.items()})


def tensor_to_element_pair(d: Mapping[tuple[Word, Word], Fraction]) -> Tensor:
    """Transport a gr tensor to the tensor square of the algebra through the chain values."""
    out = Tensor.zero(2)
    for (a, b), c in d.items():
        ea = Element.one() if not a else chain_value(a)
        eb = Element.one() if not b else chain_value(b)
        out = out + Tensor.product(ea, eb).scale(c)
    return out


def leading_term_check(a: Word, b: Word) -> bool:
    """Top-length part of the product of two chain values equals their shuffle."""
    a, b = tuple(a), tuple(b)
    x = chain_value(a) * chain_value(b)
    expected = shuffle_product(GrElement.word(*a), GrElement.word(*b)).to_element()
    return pi_j(x, len(a) + len(b)) == expected


# -- Hopf endomorphisms from tree families -------------------------------------

class TreeFamily:
    """Primitive ``P_t`` for every tree up to ``bound``; trees not given map to 0."""

    def __init__(self, values: Mapping, bound: int, check: bool = True):
        self.bound = bound
        self.values: dict[RootedTree, Element] = {}
        for t, p in values.items():
            if isinstance(t, str):
                from .trees import parse_tree
                t = parse_tree(t)
            p = as_element(p)
            if t.weight > bound:
                raise ValueError(f"tree {t} exceeds the bound {bound}")
            if check and p and not is_primitive(p):
                raise ValueError(f"P_{t} is not primitive")
            if p:
                self.values[t] = p

    def __getitem__(self, t: RootedTree) -> Element:
        if t.weight > self.bound:
            raise ValueError(f"tree {t} exceeds the bound {self.bound}")
        return self.values.get(t, Element.zero())

    def records(self) -> dict[str, str]:
        return {t.key: p.render() for t, p in sorted(self.values.items())}

    def __eq__(self, other) -> bool:
        return isinstance(other, TreeFamily) and self.bound == other.bound and self.values == other.values


class HopfEndomorphism:
    """The algebra map ``Phi(T) = sum_(T) Phi(T') T P_{T''} + P_T`` on weights up to the bound."""

    def __init__(self, family: TreeFamily):
        self.family = family
        self._trees: dict[RootedTree, Element] = {}
        self._forests: dict[Forest, Element] = {}

    @property
    def bound(self) -> int:
        return self.family.bound

    def _tree(self, t: RootedTree) -> Element:
        hit = self._trees.get(t)
        if hit is not None:
            return hit
        out = self.family[t]
        # the trunk of a cut is a single tree, so group by it
        by_trunk: dict[Forest, dict[Forest, Fraction]] = {}
        for (left, right), c in _reduced_forest(Forest((t,))).items():
            by_trunk.setdefault(right, {})[left] = c
        for right, lefts in by_trunk.items():
            p = self.family[right.trees[0]]
            if not p:
                continue
            image = Element(lefts).map_linear(self._forest)
            out = out + graft(image, p)
        self._trees[t] = out
        return out

    def _forest(self, f: Forest) -> Element:
        hit = self._forests.get(f)
        if hit is not None:
            return hit
        out = Element.one()
        for t in f.trees:
            out = out * self._tree(t)
        self._forests[f] = out
        return out

    def __call__(self, x) -> Element:
        x = as_element(x)
        if x.max_weight() > self.bound:
            raise ValueError(f"weight {x.max_weight()} exceeds the bound {self.bound}")
        return x.map_linear(self._forest)


def phi_family(family: TreeFamily, x, weight_bound: int | None = None) -> Element:
    if weight_bound is not None and weight_bound > family.bound:
        raise ValueError("family is not defined up to the requested bound")
    return HopfEndomorphism(family)(x)


def _is_bialgebra_map(fn: Callable[[Element], Element], bound: int) -> bool:
    for n in range(bound + 1):
        for f in enumerate_forests(n):
            x = Element.basis(f)
            y = fn(x)
            if counit(y) != counit(x):
                return False
            lhs = coproduct(y)
            rhs = Tensor.zero(2)
            for (a, b), c in coproduct(x).items():
                rhs = rhs + Tensor.product(fn(Element.basis(a)), fn(Element.basis(b))).scale(c)
            if lhs != rhs:
                return False
            if len(f.trees) > 1:
                prod = Element.one()
                for t in f.trees:
                    prod = prod * fn(Element.basis(t))
                if prod != y:
                    return False
    return True


def recover_family(endo: Callable[[Element], Element], weight_bound: int, check: bool = True) -> TreeFamily:
    """``P_T = pi1(Psi(T))`` for every tree up to the bound."""
    if check and not _is_bialgebra_map(endo, weight_bound):
        raise ValueError("the oracle is not a bialgebra endomorphism on the truncation")
    values = {}
    for n in range(1, weight_bound + 1):
        for t in enumerate_trees(n):
            values[t] = pi1(endo(Element.basis(t)))
    return TreeFamily(values, weight_bound, check=False)


# -- coalgebra endomorphisms from families u_i ------------------------------------

def _words(length: int, weight: int) -> list[Word]:
    out = []
    for comp in _compositions(weight):
        if len(comp) != length:
            continue
        words = [()]
        for w in comp:
            words = [x + ((w, i),) for x in words for i in range(len(primitive_basis(w)))]
        out.extend(words)
    return out


def _prim_gr(p) -> dict[Word, Fraction]:
    if isinstance(p, GrElement):
        for w in p.terms:
            if len(w) != 1:
                raise ValueError("u must take primitive values")
        return dict(p.terms)
    return {(r,): c for r, c in primitive_coordinates(p).items()}


@dataclass
class UFamily:
    """``u_i``: words of length ``i`` to primitives, up to total weight ``bound``.

    ``maps[i][word]`` is a dict of length-one words; missing entries are 0.
    """

    bound: int
    maps: dict[int, dict[Word, dict[Word, Fraction]]] = field(default_factory=dict)

    def value(self, word: Word) -> dict[Word, Fraction]:
        return self.maps.get(len(word), {}).get(tuple(word), {})

    def set(self, word: Word, value) -> None:
        word = tuple(word)
        vals = _prim_gr(value)
        for w in vals:
            if _word_weight(w) != _word_weight(word):
                raise ValueError("u must preserve weight")
        self.maps.setdefault(len(word), {})[word] = {k: v for k, v in vals.items() if v}

    @classmethod
    def identity(cls, bound: int) -> "UFamily":
        return cls.from_u1_matrices({w: _identity(len(primitive_basis(w))) for w in range(1, bound + 1)}, bound)

    @classmethod
    def from_u1_matrices(cls, mats: Mapping[int, Sequence[Sequence]], bound: int) -> "UFamily":
        """``u_1(b_k) = sum_m M[m][k] b_m`` on each ``primitive_basis(w)``; ``u_i = 0`` for ``i >= 2``."""
        u = cls(bound)
        for w in range(1, bound + 1):
            m = mats.get(w)
            size = len(primitive_basis(w))
            if m is None:
                continue
            if len(m) != size or any(len(r) != size for r in m):
                raise ValueError(f"u_1 at weight {w} must be {size} x {size}")
            for k in range(size):
                u.maps.setdefault(1, {})[((w, k),)] = {((w, r),): Fraction(m[r][k]) for r in range(size) if m[r][k]}
        return u

    def u1_matrix(self, w: int) -> list[list[Fraction]]:
        size = len(primitive_basis(w))
        m = [[Fraction(0)] * size for _ in range(size)]
        for k in range(size):
            for (ref,), c in self.value(((w, k),)).items():
                m[ref[1]][k] = c
        return m

    def compose(self, other: "UFamily") -> "UFamily":
        """``(u o v)_1 = u_1 o v_1``; only meaningful when both are pure ``u_1`` families."""
        if any(k != 1 and v for k, v in self.maps.items()) or any(k != 1 and v for k, v in other.maps.items()):
            raise ValueError("composition law implemented for pure u_1 families")
        bound = min(self.bound, other.bound)
        mats = {}
        for w in range(1, bound + 1):
            a, b = self.u1_matrix(w), other.u1_matrix(w)
            n = len(a)
            mats[w] = [[sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
        return UFamily.from_u1_matrices(mats, bound)


def _identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _phi_u_word(U: UFamily, w: Word, max_arity: int | None = None) -> dict[Word, Fraction]:
    if not w:
        return {(): Fraction(1)}
    out: dict[Word, Fraction] = {}
    for comp in _compositions(len(w)):
        if max_arity is not None and max(comp) > max_arity:
            continue
        partial: dict[Word, Fraction] = {(): Fraction(1)}
        pos = 0
        for a in comp:
            val = U.value(w[pos:pos + a])
            pos += a
            if not val:
                partial = {}
                break
            partial = {x + y: c * d for x, c in partial.items() for y, d in val.items()}
        for x, c in partial.items():
            out[x] = out.get(x, 0) + c
    return out


def phi_u(U: UFamily, x: GrElement, max_arity: int | None = None) -> GrElement:
    """``Phi(p_n T ... T p_1) = sum over compositions a_1 + ... + a_k = n`` of ``u_a1 (x) ... (x) u_ak``.

    Groups are read left to right. ``max_arity`` truncates the family (``u_i = 0`` above it).
    """
    if x.max_weight() > U.bound:
        raise ValueError(f"weight {x.max_weight()} exceeds the bound {U.bound}")
    out: dict[Word, Fraction] = {}
    for w, c in x.terms.items():
        for y, d in _phi_u_word(U, w, max_arity).items():
            out[y] = out.get(y, 0) + c * d
    return GrElement(out)


def is_invertible(U: UFamily) -> bool:
    """Bijective iff ``u_1`` is bijective at every weight up to the bound."""
    return all(invertible(U.u1_matrix(w)) for w in range(1, U.bound + 1))


def extend_to_bialgebra(U1: UFamily, rng: random.Random | None = None) -> UFamily:
    """Complete ``u_1`` to ``(u_i)`` whose coalgebra map is multiplicative for the shuffle product.

    On shuffles ``u_{i+j}`` is forced by
    ``u_{i+j}(x * y) = -Phi'(x * y) + Phi'(x) * Phi'(y)`` with ``Phi'`` the
    family truncated below ``i + j``; on a complement it is free, and ``rng``
    picks random primitive values there (zero without an ``rng``).
    """
    bound = U1.bound
    U = UFamily(bound, {1: dict(U1.maps.get(1, {}))})
    for n in range(2, bound + 1):
        for weight in range(n, bound + 1):
            solver = EchelonBasis()
            values: list[dict[Word, Fraction]] = []
            pairs = []
            for i in range(1, n):
                j = n - i
                for wa in range(i, weight - j + 1):
                    for a in _words(i, wa):
                        for b in _words(j, weight - wa):
                            pairs.append((a, b))
            for a, b in pairs:
                xa, xb = GrElement.word(*a), GrElement.word(*b)
                s = shuffle_product(xa, xb)
                rhs = -phi_u(U, s, n - 1) + phi_u(U, xa, n - 1) * phi_u(U, xb, n - 1)
                if any(len(w) != 1 for w in rhs.terms):
                    raise ArithmeticError("forced value of u is not primitive")
                coords = solver.coordinates(s.terms)
                if coords is not None:
                    implied: dict[Word, Fraction] = {}
                    for k, c in coords.items():
                        for y, d in values[k].items():
                            implied[y] = implied.get(y, 0) + c * d
                    if GrElement(implied) != rhs:
                        raise ArithmeticError("shuffle constraints on u are inconsistent")
                    continue
                solver.add(s.terms)
                values.append(dict(rhs.terms))
            prim_words = _words(1, weight)
            for w in _words(n, weight):
                if solver.add({w: Fraction(1)}):
                    free: dict[Word, Fraction] = {}
                    if rng is not None:
                        for p in prim_words:
                            c = rng.randint(-2, 2)
                            if c:
                                free[p] = Fraction(c)
                    values.append(free)
            for w in _words(n, weight):
                coords = solver.coordinates({w: Fraction(1)})
                val: dict[Word, Fraction] = {}
                for k, c in coords.items():
                    for y, d in values[k].items():
                        val[y] = val.get(y, 0) + c * d
                val = {k: v for k, v in val.items() if v}
                if val:
                    U.maps.setdefault(n, {})[w] = val
    return U


# -- the isomorphism between the product and the shuffle structure ------------------

def star(x, y) -> Element:
    """The shuffle product transported to the algebra through the chain values."""
    return shuffle_product(GrElement.from_element(x), GrElement.from_element(y)).to_element()


@dataclass
class XiResult:
    bound: int
    generators: dict[int, list]                      # weight -> chosen chain words
    images: dict[Forest, Element]                    # Xi on the forest basis
    report: dict[str, bool]

    def __call__(self, x) -> Element:
        x = as_element(x)
        if x.max_weight() > self.bound:
            raise ValueError(f"weight {x.max_weight()} exceeds the bound {self.bound}")
        return x.map_linear(lambda f: self.images[f])

    def matrix(self, n: int) -> list[list[Fraction]]:
        """Columns: images of ``enumerate_forests(n)`` in the same basis."""
        forests = enumerate_forests(n)
        return [[self.images[f].coefficient(g) for f in forests] for g in forests]


def _multisets(items: list[tuple[int, object]], total: int, start: int = 0):
    if total == 0:
        yield ()
        return
    for k in range(start, len(items)):
        w, it = items[k]
        if w <= total:
            for rest in _multisets(items, total - w, k):
                yield (it,) + rest


def _complement_generators(bound: int) -> dict[int, list]:
    generators: dict[int, list] = {}
    for i in range(1, bound + 1):
        span = EchelonBasis()
        for f in enumerate_forests(i):
            if len(f.trees) > 1:
                span.add({f: Fraction(1)})
        chosen = []
        for c in chain_basis(i).elements:
            if span.add(c.value.terms):
                chosen.append(c.refs)
        if len(chosen) != count_trees(i):
            raise ArithmeticError(f"complement at weight {i} has dimension {len(chosen)}, expected {count_trees(i)}")
        generators[i] = chosen
    return generators


def _lift(v: Word, image_of: Callable[[Word], GrElement]) -> GrElement:
    """Solve ``Delta~(x) = sum over splits of image(prefix) (x) image(suffix)`` with primitive part ``pi1(v)``."""
    rhs: dict[tuple[Word, Word], Fraction] = {}
    for k in range(1, len(v)):
        left, right = image_of(v[:k]), image_of(v[k:])
        for a, c in left.terms.items():
            for b, d in right.terms.items():
                rhs[(a, b)] = rhs.get((a, b), 0) + c * d
    out: dict[Word, Fraction] = {}
    for (a, b), c in rhs.items():
        if c and len(a) == 1:
            out[a + b] = out.get(a + b, 0) + c
    # the reduced coproduct of the candidate must reproduce every split
    lifted = GrElement(out)
    check: dict[tuple[Word, Word], Fraction] = {}
    for w, c in lifted.terms.items():
        for k in range(1, len(w)):
            check[(w[:k], w[k:])] = check.get((w[:k], w[k:]), 0) + c
    if {k: x for k, x in check.items() if x} != {k: x for k, x in rhs.items() if x}:
        raise ArithmeticError(f"no lift for generator {v}: the target is not a coboundary")
    if len(v) == 1:
        lifted = lifted + GrElement.word(*v)
    return lifted


def xi_isomorphism(weight_bound: int = 4, verify: bool = True, max_bound: int = 6,
                   method: str = "lifted") -> XiResult:
    """Algebra isomorphism from ``(H, .)`` to ``(H, *)`` built on a complement ``V`` of the square
    of the augmentation ideal.

    ``V`` at weight ``i`` is chosen greedily among chain basis elements
    (shorter chains first), independent modulo the non-connected forests.
    With ``method="fixing"`` every generator is sent to itself. With the
    default ``method="lifted"`` primitives are fixed and each longer
    generator ``v`` is sent to the unique ``x`` with the same primitive part
    and ``Delta~(x) = (Xi (x) Xi) Delta~(v)``, built weight by weight.
    """
    if weight_bound > max_bound:
        raise ValueError(f"bound {weight_bound} exceeds the configured maximum {max_bound}")
    if method not in ("lifted", "fixing"):
        raise ValueError(f"unknown method {method!r}")
    generators = _complement_generators(weight_bound)
    images: dict[Forest, Element] = {EMPTY: Element.one()}
    gen_images: dict[Word, GrElement] = {}
    word_images: dict[Word, GrElement] = {}

    def image_of(w: Word) -> GrElement:
        hit = word_images.get(w)
        if hit is None:
            hit = GrElement.from_element(chain_value(w).map_linear(lambda f: images[f]))
            word_images[w] = hit
        return hit

    items: list[tuple[int, Word]] = []
    for n in range(1, weight_bound + 1):
        for v in generators[n]:
            gen_images[v] = _lift(v, image_of) if method == "lifted" else GrElement.word(*v)
            items.append((n, v))
        dot = EchelonBasis()
        stars: list[Element] = []
        for mono in _multisets(items, n):
            a = Element.one()
            b = GrElement.one()
            for w in mono:
                a = a * chain_value(w)
                b = b * gen_images[w]
            if not dot.add(a.terms):
                raise ArithmeticError(f"generator monomials are dependent at weight {n}")
            stars.append(b.to_element())
        for f in enumerate_forests(n):
            coords = dot.coordinates({f: Fraction(1)})
            if coords is None:
                raise ArithmeticError(f"generator monomials do not span weight {n}")
            img = Element.zero()
            for k, c in coords.items():
                img = img + stars[k].scale(c)
            images[f] = img

    result = XiResult(weight_bound, generators, images, {})
    if verify:
        result.report = verify_xi(result)
    return result


def verify_xi(xi: XiResult, coproduct_bound: int | None = None) -> dict[str, bool]:
    bound = xi.bound
    cb = bound if coproduct_bound is None else min(bound, coproduct_bound)
    weight_ok = degp_ok = coprod_ok = mult_ok = True
    for n in range(1, bound + 1):
        for f in enumerate_forests(n):
            img = xi.images[f]
            if img.is_homogeneous() != n:
                weight_ok = False
            if deg_p(img) != deg_p(Element.basis(f)):
                degp_ok = False
            if len(f.trees) > 1:
                expected = Element.one()
                for t in f.trees:
                    expected = star(expected, xi.images[Forest((t,))]) if expected != Element.one() else xi.images[Forest((t,))]
                if expected != img:
                    mult_ok = False
            if n <= cb:
                lhs = coproduct(img)
                rhs = Tensor.zero(2)
                for (a, b), c in coproduct(Element.basis(f)).items():
                    rhs = rhs + Tensor.product(xi.images[a], xi.images[b]).scale(c)
                if lhs != rhs:
                    coprod_ok = False
    inv_ok = all(invertible(xi.matrix(n)) for n in range(1, bound + 1))
    return {
        "invertible": inv_ok,
        "weight preserved": weight_ok,
        "deg_p preserved": degp_ok,
        "multiplicative onto the shuffle product": mult_ok,
        "coproduct compatible": coprod_ok,
    }
