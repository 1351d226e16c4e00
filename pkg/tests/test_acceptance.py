"""Acceptance criteria 1-12. Each test records one PASS/FAIL line, printed in
the terminal summary (and by running this file directly)."""

import json
import subprocess
import sys
import textwrap
import time

import pytest

from treehopf import Element, coproduct, antipode, ladder, parse_element, parse_tensor, is_primitive
from treehopf.growth import chain_basis, graft, pi1
from treehopf.primitives import dimension_table, ladder_primitive, psi_substitute
from treehopf.renorm import renormalized
from treehopf.suites import comodule_suite, gr_suite, lie_suite

RESULTS: dict[int, tuple[bool, str]] = {}

# transcribed from the published appendix table
R = [1, 2, 4, 9, 20, 48, 115, 286, 719, 1842, 4766, 12486, 32973, 87811, 235381,
     634847, 1721159, 4688676, 12826228, 35221832, 97055181, 268282855, 743724984,
     2067174645, 5759636510, 16083734329, 45007066269, 126186554308, 354426847597]
H1 = [1, 1, 1, 2, 3, 8, 16, 41, 98, 250, 631, 1646, 4285, 11338, 30135,
      80791, 217673, 590010, 1606188, 4392219, 12055393, 33206321, 91752211,
      254261363, 706465999, 1967743066, 5493195530, 15367129299, 43073007846]


def record(n: int, ok: bool, detail: str = "") -> None:
    RESULTS[n] = (ok, detail)
    assert ok, f"criterion {n} failed: {detail}"


def fresh(snippet: str) -> dict:
    """Run ``snippet`` in a new interpreter (cold caches); it must print one JSON object."""
    code = "import json, time\n" + textwrap.dedent(snippet)
    res = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, timeout=900)
    if res.returncode != 0:
        raise RuntimeError(res.stderr)
    return json.loads(res.stdout.strip().splitlines()[-1])


def test_c01_forest_counts():
    out = fresh("""
        from treehopf import count_forests
        t = time.perf_counter()
        r = [count_forests(n) for n in range(1, 30)]
        print(json.dumps({"r": r, "s": time.perf_counter() - t}))
    """)
    record(1, out["r"] == R and out["s"] < 1, f"{out['s']:.3f} s")


def test_c02_primitive_counts_from_theta():
    out = fresh("""
        from treehopf import count_forests
        from treehopf.primitives import theta
        t = time.perf_counter()
        r = [count_forests(n) for n in range(1, 30)]
        h = [theta(n, r) for n in range(1, 30)]
        print(json.dumps({"h": h, "s": time.perf_counter() - t}))
    """)
    record(2, out["h"] == H1 and out["s"] < 1, f"{out['s']:.3f} s")


def test_c03_constructive_primitive_dimensions():
    out = fresh("""
        from treehopf.linalg import rank
        from treehopf.growth import pi1
        from treehopf import Element, enumerate_forests
        t = time.perf_counter()
        dims = [rank(pi1(Element.basis(f)).terms for f in enumerate_forests(n)) for n in range(1, 9)]
        print(json.dumps({"dims": dims, "s": time.perf_counter() - t}))
    """)
    record(3, out["dims"] == H1[:8] and out["s"] < 60, f"{out['dims']} in {out['s']:.1f} s")


def test_c04_bigrading():
    table = dimension_table(12)
    ok = all(sum(table.row(n)) == R[n - 1] for n in range(1, 13))
    for n in range(1, 8):
        cb = chain_basis(n)
        ok = ok and all(len(cb.by_length(k)) == table.h[(n, k)] for k in range(1, n + 1))
    record(4, ok, "chains n <= 7, row sums n <= 12")


def test_c05_pi1_goldens():
    l1, l2, l3 = (Element.basis(ladder(k)) for k in (1, 2, 3))
    ok = (pi1(l1) == l1
          and pi1(parse_element("[] []")) == parse_element("[] [] + -2 [[]]")
          and pi1(parse_element("[] [] []")) == parse_element("[] [] [] + -3 [[]] [] + 3 [[[]]]"))
    record(5, ok)


def test_c06_hopf_axioms_weight_six():
    out = fresh("""
        from treehopf.suites import hopf_axioms_suite
        t = time.perf_counter()
        checks = hopf_axioms_suite(6)
        print(json.dumps({"ok": [c.name for c in checks if not c.ok], "s": time.perf_counter() - t}))
    """)
    record(6, not out["ok"] and out["s"] < 120, f"{out['s']:.1f} s, failing: {out['ok']}")


def test_c07_figure_goldens():
    t = parse_element("[[[][]]]")
    cop = parse_tensor("[[[][]]] (x) 1 + [] (x) [[[]]] + [] (x) [[[]]] + [] [] (x) [[]]"
                       " + [[][]] (x) [] + 1 (x) [[[][]]]")
    anti = parse_element("-1 [[[][]]] + [[[]]] [] + [[[]]] [] + [[][]] []"
                         " + -1 [[]] [] [] + -1 [[]] [] [] + -1 [[]] [] [] + [] [] [] []")
    g1 = graft(parse_element("[[]]"), parse_element("[[][]]")) == parse_element(
        "1/3 [[[[]]][]] + 1/3 [[][[[]]]] + 1/3 [[[]][][]]")
    g2 = graft(parse_element("[] []"), parse_element("[[[]]]")) == parse_element(
        "1/3 [[[]][][]] + 1/3 [[[][][]]] + 1/3 [[[[][]]]]")
    g3 = graft(parse_element("[[]]"), parse_element("[] []")) == parse_element(
        "1/2 [[[]]] [] + 1/2 [] [[[]]]")
    record(7, coproduct(t) == cop and antipode(t) == anti and g1 and g2 and g3)


def test_c08_ladder_primitives():
    ps = [ladder_primitive(i) for i in range(1, 9)]
    ok = all(is_primitive(p) for p in ps)
    ok = ok and all(psi_substitute(i, ps[:i]) == Element.basis(ladder(i)) for i in range(1, 9))
    record(8, ok, "i <= 8")


def test_c09_lie_suite():
    checks = lie_suite(5)
    record(9, all(c.ok for c in checks), "; ".join(c.name for c in checks if not c.ok))


def test_c10_comodule_suite():
    checks = comodule_suite(3, seed=0, count=100)
    record(10, all(c.ok for c in checks), "; ".join(c.name for c in checks if not c.ok))


def test_c11_gr_and_morphisms():
    t = time.perf_counter()
    checks = gr_suite(4, seed=0)
    s = time.perf_counter() - t
    failing = [c.name for c in checks if not c.ok]
    record(11, not failing and s < 300, f"{s:.1f} s" + (f", failing: {failing}" if failing else ""))


def test_c12_renorm_golden():
    expected = ("x_{l3}(c) - [x_{l1}(c)]x_{l2}(c) - [x_{l2}(c)]x_{l1}(c) + [x_{l1}(c) x_{l1}(c)]x_{l1}(c)"
                " - [x_{l3}(c)] + [[x_{l1}(c)]x_{l2}(c)] + [[x_{l2}(c)]x_{l1}(c)]"
                " - [[x_{l1}(c) x_{l1}(c)]x_{l1}(c)]")
    record(12, renormalized(ladder(3)).render() == expected)


def summary_lines() -> list[str]:
    lines = []
    for n in range(1, 13):
        if n in RESULTS:
            ok, detail = RESULTS[n]
            lines.append(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else ""))
        else:
            lines.append(f"criterion {n:2d}: FAIL (not run)")
    return lines


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
