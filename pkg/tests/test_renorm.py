from treehopf import all_cuts, antipode, enumerate_trees, ladder
from treehopf.comodule import verify_coassociative
from treehopf.renorm import counterterm, renormalized, subtree_comodule

L3_RENORMALIZED = (
    "x_{l3}(c) - [x_{l1}(c)]x_{l2}(c) - [x_{l2}(c)]x_{l1}(c) + [x_{l1}(c) x_{l1}(c)]x_{l1}(c)"
    " - [x_{l3}(c)] + [[x_{l1}(c)]x_{l2}(c)] + [[x_{l2}(c)]x_{l1}(c)] - [[x_{l1}(c) x_{l1}(c)]x_{l1}(c)]"
)


def test_l3_golden():
    assert renormalized(ladder(3)).render() == L3_RENORMALIZED
    assert len(renormalized(ladder(3))) == 8


def test_counterterms():
    assert counterterm(ladder(1)).render() == "x_{l1}(c)"
    assert counterterm("[[]]").render() == "x_{l2}(c) - [x_{l1}(c)]x_{l1}(c)"
    assert counterterm("[[][]]").render() == "x_{[[][]]}(c) - 2 [x_{l1}(c)]x_{l2}(c) + [x_{l1}(c) x_{l1}(c)]x_{l1}(c)"


def test_bracket_is_idempotent_and_kills_renormalized_constant():
    x = counterterm(ladder(3))
    assert x.bracketed().bracketed() == x.bracketed()
    # [x - [x]] = 0 under [[E]] = [E]
    assert renormalized(ladder(3)).bracketed().render() == "0"


def test_subtree_comodule():
    com = subtree_comodule(ladder(3))
    assert [t.key for t in com.trees] == ["[]", "[[]]", "[[[]]]"]
    assert verify_coassociative(com.Q)
    for n in range(1, 6):
        for t in enumerate_trees(n):
            com = subtree_comodule(t)
            assert verify_coassociative(com.Q)
            assert com.trees[-1] == t
            for s in com.trees:
                assert set(subtree_comodule(s).trees) <= set(com.trees)


def test_trunks_of_all_cuts_match_admissible_cuts():
    for n in range(1, 7):
        for t in enumerate_trees(n):
            trunks = {c.trunk for c in all_cuts(t) if c.trunk.weight} | {t}
            assert trunks == set(subtree_comodule(t).trees)


def test_term_count_matches_expanded_antipode():
    for n in range(1, 6):
        for t in enumerate_trees(n):
            com = subtree_comodule(t)
            i = com.trees.index(t)
            expected = sum(len(antipode(q).terms) for q in com.coaction(i).values())
            assert len(counterterm(t)) == expected


def test_structured_records():
    recs = counterterm("[[]]").records()
    assert recs[1] == {"coefficient": "-1", "factors": [{"bracket": [{"symbol": "[]"}]}, {"symbol": "[]"}]}
