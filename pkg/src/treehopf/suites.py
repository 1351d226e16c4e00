"""Invariant suites run by ``treehopf check``. Each suite returns a list of
``Check`` records; a suite passes when every record does."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable

from .algebra import Element, Tensor
from .comodule import (
    GroupElement,
    PrimitiveMatrix,
    act,
    build_comodule,
    conjugate_check,
    extract_by_projection,
    extract_family,
    flag,
    is_reduced,
    verify_coassociative,
)
from .golden import H1_TABLE, R_TABLE, RENORM_L3
from .growth import chain_basis, chain_value, pi1
from .hopf import antipode, antipode_recursive, coproduct, coproduct_forest, counit, is_primitive
from .lie import LieElement, bracket, bracket_via_graft, pair, pair_right, words_of_weight
from .morphisms import (
    GrElement,
    HopfEndomorphism,
    TreeFamily,
    UFamily,
    gr_antipode,
    leading_term_check,
    phi_u,
    _words,
    verify_xi,
    xi_isomorphism,
)
from .linalg import is_invertible, rank
from .primitives import dimension_table, ladder_primitive, primitive_basis, psi_substitute, theta
from .renorm import renormalized, subtree_comodule
from .trees import Forest, b_plus, count_forests, enumerate_forests, enumerate_trees, ladder

__all__ = ["Check", "SUITES", "DEFAULT_MAX_WEIGHT", "run_suite"]


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def _ok(name: str, ok: bool, detail: str = "") -> Check:
    return Check(name, bool(ok), detail)


# -- tables ----------------------------------------------------------------------

def tables_suite(max_weight: int = 29, seed: int = 0) -> list[Check]:
    n = min(max_weight, len(R_TABLE))
    r = [count_forests(k) for k in range(1, n + 1)]
    h1 = [theta(k, r) for k in range(1, n + 1)]
    table = dimension_table(min(n, 12))
    out = [
        _ok("forest counts match the table", r == list(R_TABLE[:n]), f"n <= {n}"),
        _ok("primitive dimensions match the table", h1 == list(H1_TABLE[:n]), f"n <= {n}"),
        _ok("bigrading rows sum to r_n", all(sum(table.row(k)) == r[k - 1] for k in range(1, table.max_weight + 1))),
    ]
    for name, ok in table.series_checks().items():
        out.append(_ok(f"series identity {name}", ok))
    return out


# -- Hopf axioms -------------------------------------------------------------------

def _mult(t: Tensor) -> Element:
    out = Element.zero()
    for (a, b), c in t.items():
        out = out + Element.basis(a * b).scale(c)
    return out


def hopf_axioms_suite(max_weight: int = 5, seed: int = 0) -> list[Check]:
    coassoc = counit_ok = anti = anti_rec = cocycle = grading = True
    failures: list[str] = []
    for n in range(max_weight + 1):
        for f in enumerate_forests(n):
            d = coproduct_forest(f)
            x = Element.basis(f)
            if d.expand_slot(coproduct_forest, 0) != d.expand_slot(coproduct_forest, 1):
                coassoc = False
                failures.append(f"coassociativity {f}")
            left = Element.zero()
            right = Element.zero()
            for (a, b), c in d.items():
                left = left + Element.basis(a).scale(c * counit(Element.basis(b)))
                right = right + Element.basis(b).scale(c * counit(Element.basis(a)))
                if a.weight + b.weight != n:
                    grading = False
            if left != x or right != x:
                counit_ok = False
                failures.append(f"counit {f}")
            eps = Element.scalar(counit(x))
            if _mult(d.apply_to_slot(antipode, 0)) != eps or _mult(d.apply_to_slot(antipode, 1)) != eps:
                anti = False
                failures.append(f"antipode {f}")
            if antipode(x) != antipode_recursive(x):
                anti_rec = False
                failures.append(f"recursive antipode {f}")
            if n < max_weight or n == 0:
                t = Forest((b_plus(f),))
                lhs = coproduct_forest(t)
                rhs = Tensor.product(Element.basis(t), Element.one()) + d.apply_to_slot(
                    lambda g: Element.basis(b_plus(g)), 1)
                if lhs != rhs:
                    cocycle = False
                    failures.append(f"cocycle {f}")
    detail = "; ".join(failures[:5])
    return [
        _ok("coassociativity", coassoc, detail),
        _ok("counit", counit_ok),
        _ok("antipode convolution", anti),
        _ok("antipode agrees with the recursion", anti_rec),
        _ok("B+ cocycle", cocycle),
        _ok("coproduct respects the grading", grading),
    ]


# -- primitives and the bigrading ------------------------------------------------

def primitives_suite(max_weight: int = 8, seed: int = 0) -> list[Check]:
    dims = [len(primitive_basis(n)) for n in range(1, max_weight + 1)]
    l1, l2, l3 = (Element.basis(ladder(k)) for k in (1, 2, 3))
    golden = (
        pi1(l1) == l1
        and pi1(l1 * l1) == l1 * l1 - l2.scale(2)
        and pi1(l1 * l1 * l1) == l1 * l1 * l1 - (l1 * l2).scale(3) + l3.scale(3)
    )
    ladders_ok = True
    ps = [ladder_primitive(i) for i in range(1, max_weight + 1)]
    for i in range(1, max_weight + 1):
        if not is_primitive(ps[i - 1]) or psi_substitute(i, ps[:i]) != Element.basis(ladder(i)):
            ladders_ok = False
    table = dimension_table(max_weight)
    big_n = min(max_weight, 7)
    bigrading = True
    for n in range(1, big_n + 1):
        cb = chain_basis(n)
        for k in range(1, n + 1):
            if len(cb.by_length(k)) != table.h[(n, k)]:
                bigrading = False
    return [
        _ok("dim span pi1(forests) = h_{n,1}", dims == list(H1_TABLE[:max_weight]), str(dims)),
        _ok("pi1 goldens on l1, l1^2, l1^3", golden),
        _ok("ladder primitives are primitive and invert Psi", ladders_ok),
        _ok("chain counts per length match phi", bigrading, f"n <= {big_n}"),
    ]


# -- Lie algebra and pairing -------------------------------------------------------

def _jacobi(a: LieElement, b: LieElement, c: LieElement) -> LieElement:
    return bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))


def lie_suite(max_weight: int = 5, seed: int = 0) -> list[Check]:
    """Pairing checks up to ``max_weight``; Jacobi to total weight ``max_weight + 4``."""
    trees = [t for n in range(1, max_weight + 4) for t in enumerate_trees(n)]
    gens = {t: LieElement.generator(t) for t in trees}
    antisym = graft_ok = True
    for a in trees:
        for b in trees:
            if a.weight + b.weight > max_weight + 4:
                continue
            ab = bracket(gens[a], gens[b])
            if ab != -bracket(gens[b], gens[a]):
                antisym = False
            if a.weight + b.weight <= max_weight + 1 and ab != bracket_via_graft(gens[a], gens[b]):
                graft_ok = False
    jacobi = True
    jac_bound = max_weight + 4
    small = [t for t in trees if t.weight <= jac_bound - 2]
    for a, b, c in combinations_with_replacement(small, 3):
        if a.weight + b.weight + c.weight <= jac_bound and _jacobi(gens[a], gens[b], gens[c]):
            jacobi = False
            break
    ortho = True
    for n in range(1, max_weight + 1):
        for m in range(1, max_weight + 1):
            if m == n:
                continue
            for w in words_of_weight(m, max_len=3):
                for f in enumerate_forests(n):
                    if pair(w, Element.basis(f)):
                        ortho = False
    parse_free = True
    rng = random.Random(seed)
    for _ in range(20):
        n = rng.randint(1, max_weight)
        fs = enumerate_forests(n)
        x = Element({rng.choice(fs): rng.randint(-3, 3) for _ in range(3)})
        for w in words_of_weight(n, max_len=3):
            if pair(w, x) != pair_right(w, x):
                parse_free = False
    prim_ortho = True
    for n in range(1, max_weight + 2):
        for p in primitive_basis(n).elements:
            if pair((), p):
                prim_ortho = False
            for w in words_of_weight(n):
                if len(w) >= 2 and pair(w, p):
                    prim_ortho = False
    concat = True
    for n in range(2, max_weight + 1):
        words = list(words_of_weight(n, max_len=3))
        for c in chain_basis(n).elements:
            refs = c.refs
            value = chain_value(refs)
            for w in words:
                for k in range(1, len(w)):
                    u, v = w[:k], w[k:]
                    rhs = Fraction(0)
                    for s in range(len(refs) + 1):
                        left = chain_value(refs[:s]) if s else Element.one()
                        right = chain_value(refs[s:]) if s < len(refs) else Element.one()
                        rhs += pair(u, left) * pair(v, right)
                    if pair(w, value) != rhs:
                        concat = False
    nondeg = True
    for n in range(1, max_weight + 1):
        rows = [{k: v for k, f in enumerate(enumerate_forests(n)) if (v := pair(w, Element.basis(f)))}
                for w in words_of_weight(n)]
        if rank(rows) != count_forests(n):
            nondeg = False
    return [
        _ok("bracket antisymmetry", antisym),
        _ok("bracket agrees with the grafting formula", graft_ok),
        _ok(f"Jacobi identity to total weight {jac_bound}", jacobi),
        _ok("pairing is grading orthogonal", ortho),
        _ok("left and right pairing recursions agree", parse_free),
        _ok("A^2 + (1) is orthogonal to Prim", prim_ortho),
        _ok("pairing turns concatenation into chain deconcatenation", concat),
        _ok("pairing is nondegenerate per weight", nondeg),
    ]


# -- comodules ------------------------------------------------------------------

def random_primitive(rng: random.Random, weight: int) -> Element:
    basis = primitive_basis(weight).elements
    out = Element.zero()
    for b in basis:
        c = rng.randint(-2, 2)
        if c:
            out = out + b.scale(c)
    return out


def random_family(rng: random.Random, n: int, max_entry_weight: int) -> PrimitiveMatrix:
    fam = {}
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            if rng.random() < 0.7:
                fam[(a, b)] = random_primitive(rng, rng.randint(1, max_entry_weight))
    return PrimitiveMatrix.from_family(n, fam)


def worked_example() -> PrimitiveMatrix:
    """Reduced family of type (1, 2, 2): ``a, b`` independent, columns ``(c, d)`` and ``(e, f)`` independent."""
    p3, p4, p5 = (primitive_basis(w).elements for w in (3, 4, 5))
    l1 = Element.basis(ladder(1))
    a, b = p4
    c, e = p4
    d, f = p5[0], p5[1]
    x, y = p3[0], l1
    fam = {(1, 1): a, (1, 2): b, (1, 3): x, (1, 4): y,
           (2, 3): c, (2, 4): e, (3, 3): d, (3, 4): f}
    return PrimitiveMatrix.from_family(4, fam)


def comodule_suite(max_weight: int = 3, seed: int = 0, count: int = 100) -> list[Check]:
    rng = random.Random(seed)
    roundtrip = coassoc = projection = increasing = type_match = True
    for _ in range(count):
        n = rng.randint(1, 4)
        P = random_family(rng, n, max_weight)
        Q = build_comodule(P)
        if not verify_coassociative(Q):
            coassoc = False
        if extract_family(Q) != P:
            roundtrip = False
        # pi1 on the corner entries is costly past weight 8; cross-check below that
        if max(x.max_weight() for row in Q.rows for x in row) <= 8 and extract_by_projection(Q) != P:
            projection = False
        fl = flag(Q)
        if any(b <= a for a, b in zip(fl.dims, fl.dims[1:])) or fl.dims[-1] != Q.size:
            increasing = False
        t = is_reduced(P)
        if t is not None and t != fl.type:
            type_match = False
    P = worked_example()
    example_ok = is_reduced(P) == (1, 2, 2) and flag(build_comodule(P)).type == (1, 2, 2)
    g = GroupElement([[1, 2, -1, 0, 3], [0, 1, 1, 1, 0], [0, 1, 2, 0, -1], [0, 0, 0, 1, 1], [0, 0, 0, 0, 2]],
                     (1, 2, 2))
    P2 = act(g, P)
    action_ok = conjugate_check(g, P, P2) and is_reduced(P2) == (1, 2, 2)
    return [
        _ok("build -> extract roundtrip", roundtrip, f"{count} families, seed {seed}"),
        _ok("built comodules are coassociative", coassoc),
        _ok("extraction by projection agrees", projection),
        _ok("flags strictly increase", increasing),
        _ok("reduced type equals flag type", type_match),
        _ok("worked example has type (1, 2, 2)", example_ok),
        _ok("parabolic action preserves the type and conjugates Q", action_ok),
    ]


# -- gr algebra and morphisms --------------------------------------------------------

def _prim_refs(max_w: int) -> list[tuple[int, int]]:
    return [(w, i) for w in range(1, max_w + 1) for i in range(len(primitive_basis(w)))]


def gr_suite(max_weight: int = 4, seed: int = 0) -> list[Check]:
    refs = _prim_refs(2)
    leading = True
    words = [()]
    all_words = []
    for _ in range(4):
        words = [w + (r,) for w in words for r in refs]
        all_words.extend(words)
    for a in all_words:
        for b in all_words:
            if len(a) + len(b) <= 4 and not leading_term_check(a, b):
                leading = False
    family = TreeFamily({t: pi1(Element.basis(t)) for n in range(1, max_weight + 1) for t in enumerate_trees(n)},
                        max_weight)
    rng = random.Random(seed)
    values = {}
    for n in range(1, max_weight + 1):
        for t in enumerate_trees(n):
            values[t] = random_primitive(rng, n)
    endo = HopfEndomorphism(TreeFamily(values, max_weight))
    ident = HopfEndomorphism(family)
    delta_ok = anti_ok = ident_ok = True
    for n in range(max_weight + 1):
        for f in enumerate_forests(n):
            x = Element.basis(f)
            if ident(x) != x:
                ident_ok = False
            y = endo(x)
            rhs = Tensor.zero(2)
            for (a, b), c in coproduct_forest(f).items():
                rhs = rhs + Tensor.product(endo(Element.basis(a)), endo(Element.basis(b))).scale(c)
            if coproduct(y) != rhs:
                delta_ok = False
            if antipode(y) != endo(antipode(x)):
                anti_ok = False
    bound = min(max_weight, 4)
    mats_u = {w: _random_invertible(rng, len(primitive_basis(w))) for w in range(1, bound + 1)}
    mats_v = {w: _random_invertible(rng, len(primitive_basis(w))) for w in range(1, bound + 1)}
    U, V = UFamily.from_u1_matrices(mats_u, bound), UFamily.from_u1_matrices(mats_v, bound)
    UV = U.compose(V)
    compose_ok = True
    for n in range(1, bound + 1):
        for length in range(1, n + 1):
            for w in _words(length, n):
                x = GrElement.word(*w)
                if phi_u(U, phi_u(V, x)) != phi_u(UV, x):
                    compose_ok = False
    gr_anti = all(
        (GrElement.word(*w) * gr_antipode(GrElement.word(*w))).terms.get((), 0) == (1 if not w else 0)
        for w in all_words[:20]
    )
    xi = xi_isomorphism(min(max_weight, 4), verify=False)
    report = verify_xi(xi)
    out = [
        _ok("leading term of a product is the shuffle", leading, "j + l <= 4, weights <= 2"),
        _ok("Phi with P_t = pi1(t) is the identity", ident_ok),
        _ok("Phi is a coproduct morphism", delta_ok),
        _ok("Phi commutes with the antipode", anti_ok),
        _ok("Phi_u o Phi_v = Phi_(u o v)", compose_ok),
        _ok("gr antipode sanity", gr_anti),
    ]
    for name, ok in report.items():
        out.append(_ok(f"Xi {name}", ok))
    return out


def _random_invertible(rng: random.Random, n: int) -> list[list[int]]:
    while True:
        m = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        if is_invertible(m):
            return m


# -- renormalization ---------------------------------------------------------------

def renorm_suite(max_weight: int = 5, seed: int = 0) -> list[Check]:
    coassoc = closed = True
    for n in range(1, max_weight + 1):
        for t in enumerate_trees(n):
            com = subtree_comodule(t)
            if not verify_coassociative(com.Q):
                coassoc = False
            if any(not set(com.trees) >= set(subtree_comodule(s).trees) for s in com.trees):
                closed = False
    return [
        _ok("renormalized l3 matches the golden display", renormalized(ladder(3)).render() == RENORM_L3),
        _ok("subtree comodules are coassociative", coassoc),
        _ok("trunk sets are closed under taking trunks", closed),
    ]


SUITES: dict[str, Callable[..., list[Check]]] = {
    "tables": tables_suite,
    "hopf-axioms": hopf_axioms_suite,
    "primitives": primitives_suite,
    "lie": lie_suite,
    "comodule": comodule_suite,
    "gr": gr_suite,
    "renorm": renorm_suite,
}

DEFAULT_MAX_WEIGHT = {
    "tables": 29,
    "hopf-axioms": 5,
    "primitives": 8,
    "lie": 5,
    "comodule": 3,
    "gr": 4,
    "renorm": 5,
}


def run_suite(name: str, max_weight: int | None = None, seed: int = 0) -> list[Check]:
    if name not in SUITES:
        raise KeyError(name)
    mw = DEFAULT_MAX_WEIGHT[name] if max_weight is None else max_weight
    return SUITES[name](max_weight=mw, seed=seed)
