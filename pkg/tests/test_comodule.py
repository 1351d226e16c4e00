import json
import random
from fractions import Fraction

import pytest

from treehopf import Element, ladder, parse_element
from treehopf.comodule import (
    GroupElement,
    PrimitiveMatrix,
    StructureMatrix,
    act,
    build_comodule,
    conjugate_check,
    decompositions,
    dump_record,
    extract_by_projection,
    extract_family,
    flag,
    is_reduced,
    load_record,
    verify_coassociative,
)
from treehopf.growth import graft
from treehopf.suites import comodule_suite, random_family, worked_example

L1 = Element.basis(ladder(1))
P2 = parse_element("[[]] + -1/2 [] []")


def test_decompositions():
    assert decompositions(2, 2) == [[(2, 2)]]
    assert decompositions(1, 3) == [[(1, 3)], [(1, 1), (2, 3)], [(1, 2), (3, 3)], [(1, 1), (2, 2), (3, 3)]]
    with pytest.raises(ValueError):
        decompositions(3, 1)


def test_build_two_step():
    P = PrimitiveMatrix.from_family(2, {(1, 1): L1, (2, 2): P2})
    Q = build_comodule(P)
    assert Q[1, 0] == L1
    assert Q[2, 1] == P2
    # the corner entry grows the upper primitive on the lower one
    assert Q[2, 0] == graft(P2, L1) == parse_element("[[[]]] + -1/2 [[][]]")
    assert verify_coassociative(Q)


def test_rejects_non_primitive_entries():
    with pytest.raises(ValueError):
        PrimitiveMatrix.from_family(1, {(1, 1): parse_element("[[]]")})


def test_extract_rejects_broken_structure():
    Q = build_comodule(PrimitiveMatrix.from_family(2, {(1, 1): L1, (2, 2): L1}))
    broken = Q.replace(2, 0, Q[2, 0] + L1 * L1)
    assert not verify_coassociative(broken)
    with pytest.raises(ValueError):
        extract_family(broken)


def test_roundtrips_seeded():
    rng = random.Random(7)
    for _ in range(30):
        P = random_family(rng, rng.randint(1, 3), 2)
        Q = build_comodule(P)
        assert verify_coassociative(Q)
        assert extract_family(Q) == P
        assert extract_by_projection(Q) == P


def test_reduced_types():
    assert is_reduced(PrimitiveMatrix.from_family(1, {(1, 1): L1})) == (1, 1)
    assert is_reduced(PrimitiveMatrix.zero(2)) == (3,)
    # dependent columns inside a superdiagonal block are not reduced
    assert is_reduced(PrimitiveMatrix.from_family(2, {(1, 1): L1, (1, 2): L1.scale(2)})) is None


def test_flag_of_trivial_and_two_step():
    assert flag(StructureMatrix.identity(3)).type == (3,)
    Q = build_comodule(PrimitiveMatrix.from_family(1, {(1, 1): L1}))
    fl = flag(Q)
    assert fl.dims == [1, 2]
    assert fl.type == (1, 1)


def test_worked_example_type():
    P = worked_example()
    assert is_reduced(P) == (1, 2, 2)
    assert flag(build_comodule(P)).type == (1, 2, 2)


def test_parabolic_action_scales_projective_class():
    P = PrimitiveMatrix.from_family(1, {(1, 1): L1})
    g = GroupElement([[1, 0], [0, 3]], (1, 1))
    P2 = act(g, P)
    assert P2.p(1, 1) == L1.scale(Fraction(1, 3))
    assert conjugate_check(g, P, P2)


def test_group_profile_is_checked():
    with pytest.raises(ValueError):
        GroupElement([[1, 0], [1, 1]], (1, 1))
    with pytest.raises(ValueError):
        GroupElement([[1, 1], [1, 1]], (2,))


def test_records_roundtrip():
    P = PrimitiveMatrix.from_family(2, {(1, 1): L1, (2, 2): P2, (1, 2): L1})
    rec = dump_record(P)
    assert load_record(json.dumps(rec)) == P
    Q = build_comodule(P)
    assert load_record(dump_record(Q)) == Q
    with pytest.raises(ValueError):
        load_record({"kind": "structure", "n": 1, "entries": [{"i": 0, "j": 1, "element": "[]"}]})


def test_comodule_suite_small():
    assert all(c.ok for c in comodule_suite(2, seed=1, count=20))
