import itertools

import pytest
from hypothesis import given, settings

from treehopf import (
    EMPTY,
    Forest,
    ParseError,
    admissible_cuts,
    all_cuts,
    b_plus,
    canonicalize,
    count_forests,
    count_trees,
    enumerate_forests,
    enumerate_trees,
    ladder,
    parse_forest,
    parse_tree,
)
from treehopf.trees import symmetry_factor

from conftest import random_raw_tree, trees_up_to


def _brute_tree_count(n):
    # parent arrays p[i] < i, canonicalized: an oracle independent of the enumerator
    if n == 1:
        return 1
    seen = set()
    for parents in itertools.product(*[range(i) for i in range(1, n)]):
        kids = [[] for _ in range(n)]
        for child, p in enumerate(parents, start=1):
            kids[p].append(child)

        def raw(v):
            return tuple(raw(c) for c in kids[v])

        seen.add(canonicalize(raw(0)))
    return len(seen)


def test_parse_and_render_canonical():
    t = parse_tree("[[][[]]]")
    assert t.key == "[[[]][]]"
    assert str(parse_forest("[] [[]]")) == "[[]] []"
    assert parse_forest("1") == EMPTY
    assert t.weight == 4


def test_ladders_and_b_plus():
    assert ladder(3).key == "[[[]]]"
    assert ladder(3).is_ladder()
    assert not parse_tree("[[][]]").is_ladder()
    assert b_plus(Forest.of(ladder(1), ladder(1))).key == "[[][]]"
    assert b_plus(EMPTY) == ladder(1)


@pytest.mark.parametrize("text,pos", [("[[]", 3), ("[]]", 2), ("[a]", 1), ("", 0)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_tree(text)
    assert info.value.position == pos


def test_tree_counts_against_brute_force():
    for n in range(1, 7):
        assert count_trees(n) == len(enumerate_trees(n)) == _brute_tree_count(n)


def test_forest_counts():
    assert [count_forests(n) for n in range(1, 9)] == [1, 2, 4, 9, 20, 48, 115, 286]
    for n in range(0, 7):
        assert len(enumerate_forests(n)) == count_forests(n)


def test_cuts_of_the_ladder():
    cuts = admissible_cuts(ladder(3))
    assert len(cuts) == 2
    assert len(all_cuts(ladder(3))) == 3
    assert {(c.crown.key, c.trunk.key) for c in cuts} == {("[[]]", "[]"), ("[]", "[[]]")}


def test_admissible_cut_count_on_cherry():
    # two leaves plus both together
    assert len(admissible_cuts(parse_tree("[[][]]"))) == 3


def test_symmetry_factors():
    assert symmetry_factor(parse_tree("[[][]]")) == 2
    assert symmetry_factor(parse_tree("[[][][]]")) == 6
    assert symmetry_factor(ladder(4)) == 1


@settings(max_examples=100, deadline=None)
@given(random_raw_tree())
def test_canonical_form_is_isomorphism_invariant(raw):
    t = canonicalize(raw)
    reversed_raw = _reverse(raw)
    assert canonicalize(reversed_raw) == t
    assert parse_tree(t.key) == t


def _reverse(raw):
    return tuple(_reverse(c) for c in reversed(raw))


@settings(max_examples=50, deadline=None)
@given(trees_up_to(6))
def test_cut_weights_add_up(t):
    for c in all_cuts(t):
        assert c.crown.weight + c.trunk.weight == t.weight
        assert len(c.crown) == c.size
