"""Formal counterterms and renormalized expressions for the toy model of
iterated integrals indexed by rooted trees.

Only the algebraic shape is produced: ``x_t(c)`` stays a symbol and a
bracket ``[E]`` stands for ``E`` evaluated at ``c = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import Element, render_coefficient
from .comodule import PrimitiveMatrix, StructureMatrix, extract_family
from .hopf import antipode
from .trees import Forest, RootedTree, admissible_cuts, parse_tree

__all__ = [
    "ToySymbol",
    "Bracket",
    "RenormExpression",
    "SubtreeComodule",
    "subtree_comodule",
    "counterterm",
    "renormalized",
    "tree_name",
]


def tree_name(t: RootedTree) -> str:
    """``l3`` for ladders, the bracket string otherwise."""
    return f"l{t.weight}" if t.is_ladder() else t.key


@dataclass(frozen=True, order=True)
class ToySymbol:
    """The integrand symbol ``x_t(c)``."""

    tree: RootedTree

    def render(self) -> str:
        return f"x_{{{tree_name(self.tree)}}}(c)"

    def record(self) -> dict:
        return {"symbol": self.tree.key}


@dataclass(frozen=True)
class Bracket:
    """``[M]``: a product of factors evaluated at ``c = 0``."""

    factors: tuple

    def render(self) -> str:
        return "[" + _render_product(self.factors) + "]"

    def record(self) -> dict:
        return {"bracket": [f.record() for f in self.factors]}


Factor = Union[ToySymbol, Bracket]


def _factor_key(f: Factor):
    # brackets first, then plain symbols
    if isinstance(f, Bracket):
        return (0, f.render())
    return (1, f.tree.key)


def _term(factors) -> tuple:
    return tuple(sorted(factors, key=_factor_key))


def _render_product(factors: tuple) -> str:
    if not factors:
        return "1"
    out = ""
    prev_symbol = False
    for f in factors:
        is_symbol = isinstance(f, ToySymbol)
        if is_symbol and prev_symbol:
            out += " "
        out += f.render()
        prev_symbol = is_symbol
    return out


def bracket_term(term: tuple) -> tuple:
    """``[term]`` as a one-factor term; ``[1] = 1`` and ``[[E]] = [E]``."""
    if not term:
        return ()
    if len(term) == 1 and isinstance(term[0], Bracket):
        return term
    return (Bracket(term),)


class RenormExpression:
    """Formal sum of commutative products of factors. Terms keep first-insertion order."""

    def __init__(self, terms=None):
        self.terms: dict[tuple, Fraction] = {}
        for term, c in (terms or {}).items() if isinstance(terms, dict) else (terms or []):
            self._add(_term(term), Fraction(c))

    def _add(self, term: tuple, c: Fraction) -> None:
        s = self.terms.get(term, 0) + c
        if s:
            self.terms[term] = s
        else:
            self.terms.pop(term, None)

    def __eq__(self, other) -> bool:
        return isinstance(other, RenormExpression) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "RenormExpression") -> "RenormExpression":
        out = RenormExpression(list(self.terms.items()))
        for t, c in other.terms.items():
            out._add(t, c)
        return out

    def __neg__(self) -> "RenormExpression":
        return RenormExpression([(t, -c) for t, c in self.terms.items()])

    def __sub__(self, other: "RenormExpression") -> "RenormExpression":
        return self + (-other)

    def bracketed(self) -> "RenormExpression":
        """Apply the bracket to every monomial."""
        return RenormExpression([(bracket_term(t), c) for t, c in self.terms.items()])

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, (term, c) in enumerate(self.terms.items()):
            sign = "-" if c < 0 else "+"
            mag = render_coefficient(abs(c))
            body = _render_product(term)
            if mag != "1":
                body = f"{mag} {body}"
            if k == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    __str__ = render

    def records(self) -> list[dict]:
        return [{"coefficient": render_coefficient(c), "factors": [f.record() for f in term]}
                for term, c in self.terms.items()]

    def __repr__(self) -> str:
        return f"RenormExpression({self.render()!r})"


@dataclass
class SubtreeComodule:
    """Basis ``x_{t_1}..x_{t_m}`` over the trunks of ``t`` (ordered by weight) and its structure matrix."""

    trees: list[RootedTree]
    Q: StructureMatrix

    @property
    def P(self) -> PrimitiveMatrix:
        return extract_family(self.Q, check=False)

    def coaction(self, i: int) -> dict[int, Element]:
        """``Delta_C(x_{t_i}) = sum_j Q[i][j] (x) x_{t_j}`` as ``{j: Q[i][j]}``."""
        return {j: self.Q[i, j] for j in range(i + 1) if self.Q[i, j]}


def subtree_comodule(t: RootedTree | str) -> SubtreeComodule:
    if isinstance(t, str):
        t = parse_tree(t)
    # trunks of arbitrary cuts coincide with trunks of admissible cuts
    trunks = {t} | {c.trunk for c in admissible_cuts(t)}
    trees = sorted(trunks, key=lambda s: (s.weight, s.key))
    index = {s: k for k, s in enumerate(trees)}
    size = len(trees)
    rows = [[Element.zero() for _ in range(size)] for _ in range(size)]
    for i, s in enumerate(trees):
        rows[i][i] = Element.one()
        acc: dict[int, dict[Forest, Fraction]] = {}
        for cut in admissible_cuts(s):
            j = index[cut.trunk]
            d = acc.setdefault(j, {})
            d[cut.crown] = d.get(cut.crown, 0) + 1
        for j, d in acc.items():
            rows[i][j] = Element(d)
    return SubtreeComodule(trees, StructureMatrix(rows))


def _forest_bracket(f: Forest) -> tuple:
    return bracket_term(tuple(ToySymbol(s) for s in f.trees))


def counterterm(t: RootedTree | str) -> RenormExpression:
    """``([.] (x) Id)(S (x) Id) Delta_C (x_t)``."""
    if isinstance(t, str):
        t = parse_tree(t)
    com = subtree_comodule(t)
    i = com.trees.index(t)
    order = sorted(com.coaction(i).items(), key=lambda kv: (-com.trees[kv[0]].weight, com.trees[kv[0]].key))
    out = RenormExpression()
    for j, left in order:
        right = ToySymbol(com.trees[j])
        for f, c in sorted(antipode(left).terms.items()):
            out._add(_term(_forest_bracket(f) + (right,)), c)
    return out


def renormalized(t: RootedTree | str) -> RenormExpression:
    """``xbar_t - [xbar_t]`` before the limit in the regulator."""
    x = counterterm(t)
    return x - x.bracketed()
