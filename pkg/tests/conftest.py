"""Shared strategies for property tests."""

import sys

from hypothesis import strategies as st

from treehopf import Element, enumerate_forests, enumerate_trees


def trees_up_to(n: int):
    pool = [t for k in range(1, n + 1) for t in enumerate_trees(k)]
    return st.sampled_from(pool)


def forests_up_to(n: int):
    pool = [f for k in range(0, n + 1) for f in enumerate_forests(k)]
    return st.sampled_from(pool)


def elements_up_to(n: int, max_terms: int = 4):
    coef = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.dictionaries(forests_up_to(n), coef, max_size=max_terms).map(Element)


def random_raw_tree(depth: int = 4):
    """Nested tuples standing for unsorted trees."""
    return st.recursive(st.just(()), lambda kids: st.lists(kids, max_size=3).map(tuple), max_leaves=7)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
