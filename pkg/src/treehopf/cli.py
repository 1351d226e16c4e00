"""Command-line front end.

Every verb prints text by default or, with ``--format structured``, one JSON
object ``{"format": "treehopf/1", "verb": ..., "result": ...}``. Exit status
is 0 on success, 1 when an invariant check fails and 2 on parse or usage
errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Any, Sequence

from .algebra import Element, parse_element, render_coefficient
from .comodule import (
    GroupElement,
    PrimitiveMatrix,
    StructureMatrix,
    act,
    build_comodule,
    dump_record,
    extract_family,
    flag,
    is_reduced,
    load_record,
    verify_coassociative,
)
from .growth import decompose, deg_p, graft, pi1
from .hopf import antipode, coproduct
from .lie import LieElement, bracket, pair, parse_word
from .morphisms import GrElement, HopfEndomorphism, TreeFamily, recover_family, xi_isomorphism
from .primitives import dimension_table, primitive_basis
from .renorm import counterterm, renormalized
from .suites import DEFAULT_MAX_WEIGHT, SUITES, run_suite
from .trees import ParseError, enumerate_forests, parse_tree

FORMAT_VERSION = "treehopf/1"


class UsageError(Exception):
    """Bad arguments or input files; maps to exit status 2."""


class Output:
    def __init__(self, verb: str, structured: bool):
        self.verb = verb
        self.structured = structured
        self.lines: list[str] = []
        self.result: Any = None

    def text(self, line: str = "") -> None:
        self.lines.append(line)

    def emit(self) -> None:
        if self.structured:
            print(json.dumps({"format": FORMAT_VERSION, "verb": self.verb, "result": self.result}, indent=2))
        else:
            for line in self.lines:
                print(line)


def _element_record(x: Element) -> list[dict]:
    return [{"coefficient": render_coefficient(c), "forest": f.key} for f, c in sorted(x.terms.items())]


def _read_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from None


_GR_REF = re.compile(r"p(\d+)\.(\d+)$")


def parse_gr_word(text: str) -> tuple:
    """``"p1.0 T p2.0"`` -> ``((1, 0), (2, 0))``; ``"1"`` is the empty word."""
    text = text.strip()
    if text == "1":
        return ()
    refs = []
    pos = 0
    for piece in text.split("T"):
        m = _GR_REF.match(piece.strip())
        if not m:
            raise ParseError("expected a primitive reference like p2.0", text, pos + len(piece) - len(piece.lstrip()))
        w, i = int(m.group(1)), int(m.group(2))
        if w < 1 or i >= len(primitive_basis(w)):
            raise ParseError(f"no primitive basis element p{w}.{i}", text, pos)
        refs.append((w, i))
        pos += len(piece) + 1
    return tuple(refs)


# -- verbs -----------------------------------------------------------------------

def cmd_coproduct(args, out: Output) -> int:
    t = coproduct(parse_element(args.element))
    out.text(t.render())
    out.result = t.records()
    return 0


def cmd_antipode(args, out: Output) -> int:
    x = antipode(parse_element(args.element))
    out.text(x.render())
    out.result = _element_record(x)
    return 0


def cmd_graft(args, out: Output) -> int:
    x = graft(parse_element(args.left), parse_element(args.right))
    out.text(x.render())
    out.result = _element_record(x)
    return 0


def cmd_pi1(args, out: Output) -> int:
    x = pi1(parse_element(args.element))
    out.text(x.render())
    out.result = _element_record(x)
    return 0


def cmd_degp(args, out: Output) -> int:
    x = parse_element(args.element)
    if not x:
        raise UsageError("deg_p is undefined for 0")
    d = deg_p(x)
    out.text(str(d))
    out.result = d
    return 0


def cmd_decompose(args, out: Output) -> int:
    d = decompose(parse_element(args.element))
    out.text(f"scalar: {render_coefficient(d.scalar)}")
    for j, comp in d.components.items():
        out.text(f"pi_{j}: {comp.render()}")
    coords = GrElement({c.refs: a for c, a in d.coordinates.items()})
    out.text(f"chains: {coords.render()}")
    out.result = {
        "scalar": render_coefficient(d.scalar),
        "components": {str(j): _element_record(c) for j, c in d.components.items()},
        "chains": [{"coefficient": render_coefficient(a), "word": [list(r) for r in c.refs]}
                   for c, a in sorted(d.coordinates.items(), key=lambda kv: kv[0].refs)],
    }
    return 0


def cmd_prim_basis(args, out: Output) -> int:
    basis = primitive_basis(args.n)
    out.text(f"weight {args.n}: {len(basis)} primitives")
    recs = []
    for k, (p, f) in enumerate(zip(basis.elements, basis.provenance)):
        out.text(f"p{args.n}.{k} = pi1({f.key}) = {p.render()}")
        recs.append({"index": k, "source": f.key, "element": p.render()})
    out.result = {"weight": args.n, "dimension": len(basis), "basis": recs}
    return 0


def cmd_dims(args, out: Output) -> int:
    table = dimension_table(args.N)
    ns = list(range(1, args.N + 1))
    width = max(len(str(v)) for v in table.r) + 1
    out.text("n      " + "".join(str(n).rjust(width) for n in ns))
    out.text("r_n    " + "".join(str(v).rjust(width) for v in table.r))
    out.text("h_n,1  " + "".join(str(table.h1(n)).rjust(width) for n in ns))
    out.result = {"n": ns, "r": table.r, "h1": [table.h1(n) for n in ns],
                  "h": {str(n): table.row(n) for n in ns}}
    return 0


def cmd_bracket(args, out: Output) -> int:
    x = bracket(LieElement.generator(parse_tree(args.t1)), LieElement.generator(parse_tree(args.t2)))
    out.text(x.render())
    out.result = [{"coefficient": render_coefficient(c), "tree": t.key} for t, c in sorted(x.terms.items())]
    return 0


def cmd_pair(args, out: Output) -> int:
    v = pair(parse_word(args.word), parse_element(args.element))
    out.text(render_coefficient(v))
    out.result = render_coefficient(v)
    return 0


def cmd_shuffle(args, out: Output) -> int:
    x = GrElement.word(*parse_gr_word(args.left)) * GrElement.word(*parse_gr_word(args.right))
    out.text(x.render())
    out.result = [{"coefficient": render_coefficient(c), "word": [list(r) for r in w]}
                  for w, c in sorted(x.terms.items())]
    if args.expand:
        e = x.to_element()
        out.text(e.render())
        out.result = {"terms": out.result, "element": _element_record(e)}
    return 0


def _load_matrix(path: str, kind: str) -> PrimitiveMatrix | StructureMatrix:
    try:
        m = load_record(_read_json(path))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed matrix record: {exc}") from None
    want = PrimitiveMatrix if kind == "primitive" else StructureMatrix
    if kind != "any" and not isinstance(m, want):
        raise UsageError(f"expected a {kind} matrix record")
    return m


def cmd_comodule(args, out: Output) -> int:
    op = args.op
    if op == "build":
        Q = build_comodule(_load_matrix(args.file, "primitive"))
        out.result = dump_record(Q)
        out.text(json.dumps(out.result, indent=2))
        return 0
    if op == "verify":
        ok = verify_coassociative(_load_matrix(args.file, "structure"))
        out.text("coassociative" if ok else "not coassociative")
        out.result = {"coassociative": ok}
        return 0 if ok else 1
    if op == "extract":
        Q = _load_matrix(args.file, "structure")
        if not verify_coassociative(Q):
            out.text("not coassociative")
            out.result = {"coassociative": False}
            return 1
        out.result = dump_record(extract_family(Q))
        out.text(json.dumps(out.result, indent=2))
        return 0
    if op == "flag":
        m = _load_matrix(args.file, "any")
        Q = build_comodule(m) if isinstance(m, PrimitiveMatrix) else m
        fl = flag(Q)
        out.text("dims: " + " ".join(map(str, fl.dims)))
        out.text("type: (" + ", ".join(map(str, fl.type)) + ")")
        out.result = {"dims": fl.dims, "type": list(fl.type),
                      "basis": [[render_coefficient(c) for c in v] for v in fl.basis]}
        return 0
    if op == "type":
        m = _load_matrix(args.file, "any")
        if isinstance(m, PrimitiveMatrix):
            t = is_reduced(m)
            ft = flag(build_comodule(m)).type
        else:
            t, ft = None, flag(m).type
        out.text("reduced type: " + (str(t) if t is not None else "not reduced"))
        out.text(f"flag type: {ft}")
        out.result = {"reduced": list(t) if t is not None else None, "flag": list(ft)}
        return 0
    if op == "act":
        if not args.group:
            raise UsageError("comodule act needs --group FILE")
        grec = _read_json(args.group)
        try:
            g = GroupElement(grec["matrix"], grec["type"])
        except (KeyError, TypeError) as exc:
            raise UsageError(f"malformed group record: {exc}") from None
        out.result = dump_record(act(g, _load_matrix(args.file, "primitive")))
        out.text(json.dumps(out.result, indent=2))
        return 0
    raise UsageError(f"unknown comodule operation {op!r}")


def _family_from_record(rec: Any, bound: int) -> TreeFamily:
    if not isinstance(rec, dict):
        raise UsageError("a family record maps tree strings to element strings")
    values = {parse_tree(k): parse_element(v) for k, v in rec.items()}
    return TreeFamily({t: p for t, p in values.items() if t.weight <= bound}, bound)


def cmd_endo(args, out: Output) -> int:
    if args.op == "apply":
        x = parse_element(args.element)
        bound = args.max_weight if args.max_weight is not None else max(x.max_weight(), 1)
        fam = _family_from_record(_read_json(args.family), bound)
        x = HopfEndomorphism(fam)(x)
        out.text(x.render())
        out.result = _element_record(x)
        return 0
    if args.op == "recover":
        rec = _read_json(args.images)
        images = {parse_tree(k): parse_element(v) for k, v in rec.items()}
        bound = args.max_weight if args.max_weight is not None else max((t.weight for t in images), default=1)

        def endo(x: Element) -> Element:
            def on_forest(f):
                y = Element.one()
                for t in f.trees:
                    if t not in images:
                        raise UsageError(f"no image given for tree {t.key}")
                    y = y * images[t]
                return y
            return x.map_linear(on_forest)

        fam = recover_family(endo, bound)
        out.result = fam.records()
        for k, v in out.result.items():
            out.text(f"P_{k} = {v}")
        return 0
    raise UsageError(f"unknown endo operation {args.op!r}")


def cmd_xi(args, out: Output) -> int:
    mw = args.max_weight if args.max_weight is not None else 4
    xi = xi_isomorphism(mw, verify=args.verify, method=args.method)
    images = {}
    for n in range(1, mw + 1):
        for f in enumerate_forests(n):
            images[f.key] = xi.images[f].render()
            out.text(f"Xi({f.key}) = {images[f.key]}")
    out.result = {"max_weight": mw, "method": args.method, "images": images}
    status = 0
    if args.verify:
        out.text("")
        for name, ok in xi.report.items():
            out.text(f"{'PASS' if ok else 'FAIL'} {name}")
        out.result["report"] = xi.report
        status = 0 if all(xi.report.values()) else 1
    return status


def cmd_renorm(args, out: Output) -> int:
    t = parse_tree(args.tree)
    x = counterterm(t) if args.form == "counterterm" else renormalized(t)
    out.text(x.render())
    out.result = x.records()
    return 0


def cmd_check(args, out: Output) -> int:
    results = run_suite(args.suite, args.max_weight, args.seed)
    mw = DEFAULT_MAX_WEIGHT[args.suite] if args.max_weight is None else args.max_weight
    out.text(f"suite {args.suite} max-weight {mw} seed {args.seed}")
    for c in results:
        out.text(f"{'PASS' if c.ok else 'FAIL'} {c.name}" + (f" ({c.detail})" if c.detail else ""))
    out.result = {"suite": args.suite, "max_weight": mw, "seed": args.seed,
                  "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in results]}
    return 0 if all(c.ok for c in results) else 1


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treehopf", description="Exact computations with rooted trees.")
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name: str, fn, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=("text", "structured"), default=argparse.SUPPRESS)
        p.set_defaults(fn=fn)
        return p

    for name, fn, h in (("coproduct", cmd_coproduct, "coproduct of an element"),
                        ("antipode", cmd_antipode, "antipode of an element"),
                        ("pi1", cmd_pi1, "projection onto the primitives"),
                        ("degp", cmd_degp, "primitive degree"),
                        ("decompose", cmd_decompose, "split into chain components")):
        verb(name, fn, h).add_argument("element")
    p = verb("graft", cmd_graft, "growth product left T right")
    p.add_argument("left")
    p.add_argument("right")
    verb("prim-basis", cmd_prim_basis, "basis of primitives of weight n").add_argument("n", type=int)
    verb("dims", cmd_dims, "forest and primitive dimension table").add_argument("N", type=int)
    p = verb("bracket", cmd_bracket, "Lie bracket of two generators")
    p.add_argument("t1")
    p.add_argument("t2")
    p = verb("pair", cmd_pair, "pairing of a word with an element")
    p.add_argument("word")
    p.add_argument("element")
    p = verb("shuffle", cmd_shuffle, "shuffle product of two chain words")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--expand", action="store_true", help="also print the value as a tree element")
    p = verb("comodule", cmd_comodule, "build, verify, classify comodules")
    p.add_argument("op", choices=("build", "verify", "flag", "type", "extract", "act"))
    p.add_argument("file", help="matrix record, '-' for stdin")
    p.add_argument("--group", help="record {matrix, type} for act")
    p = verb("endo", cmd_endo, "Hopf endomorphisms from families")
    ops = p.add_subparsers(dest="op", required=True)
    q = ops.add_parser("apply", help="apply Phi of a family to an element")
    q.add_argument("element")
    q.add_argument("--family", required=True, help="record tree -> primitive")
    q.add_argument("--max-weight", type=int)
    q = ops.add_parser("recover", help="recover the family of a bialgebra endomorphism")
    q.add_argument("--images", required=True, help="record tree -> image")
    q.add_argument("--max-weight", type=int)
    p = verb("xi", cmd_xi, "isomorphism onto the shuffle product")
    p.add_argument("--max-weight", type=int)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--method", choices=("lifted", "fixing"), default="lifted")
    p = verb("renorm", cmd_renorm, "toy model counterterm or renormalized expression")
    p.add_argument("tree")
    p.add_argument("--form", choices=("counterterm", "renormalized"), default="renormalized")
    p = verb("check", cmd_check, "run an invariant suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--max-weight", type=int)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.verb, args.format == "structured")
    try:
        status = args.fn(args, out)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out.emit()
    return status


if __name__ == "__main__":
    sys.exit(main())
