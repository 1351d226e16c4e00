
import pytest
from hypothesis import given, settings

from treehopf import Element, Tensor, ladder, parse_element, reduced_coproduct
from treehopf.growth import chain, chain_basis, chain_value, decompose, deg_p, graft, pi1, pi_j
from treehopf.hopf import is_primitive
from treehopf.primitives import primitive_basis

from conftest import elements_up_to, forests_up_to

E = parse_element


def test_graft_figure_identities():
    assert graft(E("[[]]"), E("[[][]]")) == E("2/3 [[[[]]][]] + 1/3 [[[]][][]]")
    assert graft(E("[] []"), E("[[[]]]")) == E("1/3 [[[]][][]] + 1/3 [[[][][]]] + 1/3 [[[[][]]]]")
    assert graft(E("[[]]"), E("[] []")) == E("[[[]]] []")


def test_graft_conventions():
    assert graft(E("[]"), Element.one()) == Element.zero()
    assert graft(Element.one(), E("[[]]")) == E("[[]]")
    assert graft(E("[]"), E("[]")) == E("[[]]")


def test_pi1_goldens():
    l1, l2, l3 = (Element.basis(ladder(k)) for k in (1, 2, 3))
    assert pi1(l1) == l1
    assert pi1(l1 * l1) == l1 * l1 - l2.scale(2)
    assert pi1(l1 * l1 * l1) == l1 * l1 * l1 - (l1 * l2).scale(3) + l3.scale(3)


def test_pi1_kills_chains_and_fixes_primitives():
    p = primitive_basis(2).elements[0]
    q = primitive_basis(1).elements[0]
    assert pi1(chain([p, q])) == Element.zero()
    assert pi1(p) == p


def test_chain_coproduct_is_deconcatenation():
    # the left factor of each split is the written prefix
    refs = ((1, 0), (2, 0), (1, 0))
    x = chain_value(refs)
    expected = Tensor.zero(2)
    for k in range(1, len(refs)):
        expected = expected + Tensor.product(chain_value(refs[:k]), chain_value(refs[k:]))
    assert reduced_coproduct(x) == expected


def test_chain_requires_primitives():
    with pytest.raises(ValueError):
        chain([E("[[]]"), E("[]")])


def test_deg_p():
    assert deg_p(E("[]")) == 1
    assert deg_p(E("[[]]")) == 2
    assert deg_p(E("[] [] [] + 5")) == 3
    assert deg_p(E("7")) == 0
    with pytest.raises(ValueError):
        deg_p(Element.zero())


def test_chain_basis_sizes():
    assert [len(chain_basis(n).elements) for n in range(1, 7)] == [1, 2, 4, 9, 20, 48]


@settings(max_examples=40, deadline=None)
@given(elements_up_to(5))
def test_decomposition_sums_back(x):
    d = decompose(x)
    assert d.total() == x
    for j, comp in d.components.items():
        assert pi_j(x, j) == comp
        assert deg_p(comp) == j


@settings(max_examples=40, deadline=None)
@given(forests_up_to(6))
def test_pi1_image_is_primitive(f):
    if f.weight:
        assert is_primitive(pi1(Element.basis(f)))
