
import pytest
from hypothesis import given, settings

from treehopf import Element, ParseError, enumerate_forests, enumerate_trees, ladder, parse_element, parse_tree
from treehopf.lie import (
    LieElement,
    bracket,
    bracket_via_graft,
    n_count,
    pair,
    pair_right,
    parse_word,
    render_word,
    words_of_weight,
)
from treehopf.suites import lie_suite

from conftest import elements_up_to

Z = LieElement.generator
L1, L2, L3 = ladder(1), ladder(2), ladder(3)
CHERRY = parse_tree("[[][]]")


def test_n_count():
    assert n_count(L1, L1, L2) == 1
    assert n_count(L1, L2, L3) == 1
    assert n_count(L1, L2, CHERRY) == 2
    assert n_count(L2, L1, CHERRY) == 0


def test_bracket_examples():
    assert bracket(Z(L1), Z(L1)) == 0
    # two leaves of the cherry give crown l1 over trunk l2, and l3 cancels
    assert bracket(Z(L1), Z(L2)) == Z(CHERRY).scale(2)


def test_bracket_matches_graft_formula():
    trees = [t for n in range(1, 5) for t in enumerate_trees(n)]
    for a in trees:
        for b in trees:
            assert bracket(Z(a), Z(b)) == bracket_via_graft(Z(a), Z(b))


def test_jacobi_small():
    trees = [t for n in range(1, 4) for t in enumerate_trees(n)]
    for a in trees:
        for b in trees:
            for c in trees:
                x, y, z = Z(a), Z(b), Z(c)
                j = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
                assert j == 0


def test_pairing_examples():
    assert pair((L1,), Element.basis(L1)) == 1
    assert pair((L1, L1), parse_element("[] []")) == 2
    assert pair((), parse_element("3 + [] ")) == 3
    assert pair((L1, L2), parse_element("[[[]]]")) == 1
    assert pair((L2, L1), parse_element("[[[]]]")) == 1


def test_word_syntax():
    w = parse_word("[].[[]]")
    assert w == (L1, L2)
    assert render_word(w) == "[].[[]]"
    assert parse_word("1") == ()
    with pytest.raises(ParseError) as info:
        parse_word("[].[x]")
    assert info.value.position == 4


def test_grading_orthogonality():
    for n in range(1, 5):
        for m in range(1, 5):
            if n != m:
                for w in words_of_weight(m, max_len=2):
                    for f in enumerate_forests(n):
                        assert pair(w, Element.basis(f)) == 0


@settings(max_examples=40, deadline=None)
@given(elements_up_to(5))
def test_left_and_right_recursions_agree(x):
    for n in range(1, 6):
        for w in words_of_weight(n, max_len=3):
            assert pair(w, x) == pair_right(w, x)


def test_commutator_pairs_like_the_bracket():
    # <Z_a Z_b - Z_b Z_a, t> = <[Z_a, Z_b], t> on trees
    for a in enumerate_trees(2):
        for b in enumerate_trees(1):
            br = bracket(Z(a), Z(b))
            for t in enumerate_trees(3):
                lhs = pair((a, b), Element.basis(t)) - pair((b, a), Element.basis(t))
                assert lhs == br.terms.get(t, 0)


def test_lie_suite():
    assert all(c.ok for c in lie_suite(4))
