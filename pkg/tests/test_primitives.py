
import pytest
import sympy

from treehopf import Element, count_forests, is_primitive, ladder, parse_element
from treehopf.golden import H1_TABLE, R_TABLE
from treehopf.growth import chain_basis
from treehopf.primitives import (
    dimension_table,
    ladder_primitive,
    ladder_primitive_recursive,
    partitions,
    phi,
    primitive_basis,
    primitive_coordinates,
    psi_substitute,
    theta,
)


def test_partitions():
    assert sorted(partitions(3)) == [(0, 0, 1), (1, 1, 0), (3, 0, 0)]
    assert sum(1 for _ in partitions(10)) == sympy.functions.combinatorial.numbers.partition(10)


def test_ladder_primitive_small():
    assert ladder_primitive(1) == parse_element("[]")
    assert ladder_primitive(2) == parse_element("[[]] + -1/2 [] []")


@pytest.mark.parametrize("i", range(1, 8))
def test_ladder_primitives(i):
    p = ladder_primitive(i)
    assert is_primitive(p)
    assert p == ladder_primitive_recursive(i)
    ps = [ladder_primitive(k) for k in range(1, i + 1)]
    assert psi_substitute(i, ps) == Element.basis(ladder(i))


def test_psi_rejects_wrong_arity():
    with pytest.raises(ValueError):
        psi_substitute(3, [Element.one()])


def test_primitive_dimensions_constructive():
    assert [len(primitive_basis(n)) for n in range(1, 8)] == list(H1_TABLE[:7])
    for n in range(1, 6):
        assert all(is_primitive(p) for p in primitive_basis(n).elements)


def test_pruned_basis_spans_the_same_space():
    for n in range(1, 7):
        full = primitive_basis(n)
        pruned = primitive_basis(n, pruned=True)
        assert len(full) == len(pruned)
        for p in pruned.elements:
            primitive_coordinates(p)  # raises if outside the span


def _series_h1(N):
    # oracle: H_1 = 1 - 1/R with R the forest generating function
    x = sympy.symbols("x")
    R = 1 + sum(count_forests(n) * x ** n for n in range(1, N + 1))
    s = sympy.series(1 - 1 / R, x, 0, N + 1).removeO()
    return [int(s.coeff(x, n)) for n in range(1, N + 1)]


def test_theta_matches_series_oracle():
    r = [count_forests(n) for n in range(1, 16)]
    assert [theta(n, r) for n in range(1, 16)] == _series_h1(15)


def test_dimension_table_and_series():
    table = dimension_table(12)
    assert table.r == list(R_TABLE[:12])
    assert all(table.series_checks().values())
    for n in range(1, 13):
        assert sum(table.row(n)) == table.r[n - 1]


def test_bigrading_against_chain_enumeration():
    table = dimension_table(6)
    for n in range(1, 7):
        cb = chain_basis(n)
        assert [len(cb.by_length(k)) for k in range(1, n + 1)] == table.row(n)


def test_phi_counts_compositions():
    h = [1] * 6
    # with all h = 1, phi(n, k) counts compositions of n into k parts
    assert [phi(6, k, h) for k in range(1, 7)] == [sympy.binomial(5, k - 1) for k in range(1, 7)]


def test_primitive_coordinates():
    p = primitive_basis(4).elements[1].scale(3) + primitive_basis(2).elements[0]
    assert primitive_coordinates(p) == {(2, 0): 1, (4, 1): 3}
    with pytest.raises(ArithmeticError):
        primitive_coordinates(parse_element("[[]]"))
