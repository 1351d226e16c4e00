"""Primitive elements: ladder primitives, bases per weight, and the dimension
arithmetic relating forests, primitives and chains."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Iterator, Sequence

from .algebra import Element, as_element
from .growth import chain_value, pi1
from .linalg import EchelonBasis
from .trees import Forest, count_forests, enumerate_forests, ladder

__all__ = [
    "partitions",
    "ladder_primitive",
    "ladder_primitive_recursive",
    "psi_substitute",
    "PrimitiveBasis",
    "primitive_basis",
    "theta",
    "phi",
    "phi_total",
    "DimensionTable",
    "dimension_table",
    "primitive_coordinates",
]


def partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Multiplicity vectors ``(b_1, ..., b_n)`` with ``sum k b_k = n``."""
    def rec(k: int, remaining: int) -> Iterator[list[int]]:
        if k == 0:
            if remaining == 0:
                yield []
            return
        for b in range(remaining // k + 1):
            for rest in rec(k - 1, remaining - k * b):
                yield rest + [b]

    if n == 0:
        yield ()
        return
    for v in rec(n, n):
        yield tuple(v)


def _multinomial(bs: Sequence[int]) -> int:
    return factorial(sum(bs)) // prod(factorial(b) for b in bs)


def ladder_primitive(i: int) -> Element:
    """Closed form ``sum (-1)^(|a|+1) (|a|-1)!/(a_1!...a_i!) l_1^a_1 ... l_i^a_i``."""
    if i < 1:
        raise ValueError("i must be >= 1")
    ladders = [Element.basis(ladder(k)) for k in range(1, i + 1)]
    out = Element.zero()
    for a in partitions(i):
        s = sum(a)
        coef = Fraction((-1) ** (s + 1) * factorial(s - 1), prod(factorial(x) for x in a))
        mono = Element.one()
        for k, e in enumerate(a):
            if e:
                mono = mono * ladders[k] ** e
        out = out + mono.scale(coef)
    return out


def psi_substitute(i: int, values: Sequence) -> Element:
    """``Psi_i(X_1..X_i) = sum X_1^a_1 ... X_i^a_i / (a_1! ... a_i!)`` at ``X_k = values[k-1]``."""
    if len(values) != i:
        raise ValueError(f"Psi_{i} takes {i} values, got {len(values)}")
    if i == 0:
        return Element.one()
    vals = [as_element(v) for v in values]
    out = Element.zero()
    for a in partitions(i):
        mono = Element.one()
        for k, e in enumerate(a):
            if e:
                mono = mono * vals[k] ** e
        out = out + mono.scale(Fraction(1, prod(factorial(x) for x in a)))
    return out


def ladder_primitive_recursive(i: int) -> Element:
    """``P_n = l_n - Psi_n(P_1, ..., P_{n-1}, 0)``."""
    ps: list[Element] = []
    for n in range(1, i + 1):
        ps.append(Element.basis(ladder(n)) - psi_substitute(n, ps + [Element.zero()]))
    return ps[-1]


@dataclass
class PrimitiveBasis:
    weight: int
    elements: list[Element]
    provenance: list[Forest]

    def __len__(self) -> int:
        return len(self.elements)


_BASIS_LOCK = threading.Lock()
_BASES: dict[int, PrimitiveBasis] = {}


def primitive_basis(n: int, pruned: bool = False) -> PrimitiveBasis:
    """Independent subset of ``pi1(F)`` over forests ``F`` of weight ``n``, in enumeration order.

    With ``pruned=True`` only forests independent of the longer chains are
    projected; their images are the same basis up to the choice of provenance.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if pruned:
        return _pruned_basis(n)
    hit = _BASES.get(n)
    if hit is not None:
        return hit
    solver = EchelonBasis()
    elems, prov = [], []
    for f in enumerate_forests(n):
        p = pi1(Element.basis(f))
        if p and solver.add(p.terms):
            elems.append(p)
            prov.append(f)
    basis = PrimitiveBasis(n, elems, prov)
    with _BASIS_LOCK:
        return _BASES.setdefault(n, basis)


def _pruned_basis(n: int) -> PrimitiveBasis:
    # pi1 vanishes on chains of length >= 2, so only forests outside their span matter
    sizes = {w: len(primitive_basis(w)) for w in range(1, n)}
    longer = EchelonBasis()
    refs_list: list[tuple] = []

    def rec(remaining: int, acc: tuple):
        if remaining == 0:
            if len(acc) >= 2:
                refs_list.append(acc)
            return
        for w in range(1, min(remaining, n - 1) + 1):
            for i in range(sizes[w]):
                rec(remaining - w, acc + ((w, i),))

    rec(n, ())
    for refs in refs_list:
        longer.add(chain_value(refs).terms)
    solver = EchelonBasis()
    elems, prov = [], []
    for f in enumerate_forests(n):
        if not longer.add({f: Fraction(1)}):
            continue
        p = pi1(Element.basis(f))
        if p and solver.add(p.terms):
            elems.append(p)
            prov.append(f)
    return PrimitiveBasis(n, elems, prov)


def theta(n: int, r: Sequence[int]) -> int:
    """``sum (-1)^(|b|+1) |b|!/(b_1!...b_n!) r_1^b_1 ... r_n^b_n`` over ``sum k b_k = n``."""
    if len(r) < n:
        raise ValueError(f"need r_1..r_{n}")
    total = 0
    for b in partitions(n):
        s = sum(b)
        total += (-1) ** (s + 1) * _multinomial(b) * prod(r[k] ** e for k, e in enumerate(b) if e)
    return total


def phi(n: int, k: int, h: Sequence[int]) -> int:
    """``sum k!/(b_1!...b_n!) h_1^b_1 ... h_n^b_n`` over ``sum j b_j = n``, ``sum b_j = k``."""
    if len(h) < n:
        raise ValueError(f"need h_1..h_{n}")
    total = 0
    for b in partitions(n):
        if sum(b) != k:
            continue
        total += _multinomial(b) * prod(h[j] ** e for j, e in enumerate(b) if e)
    return total


def phi_total(n: int, h: Sequence[int]) -> int:
    """``sum_k phi(n, k, h)``: the number of weight-``n`` chains."""
    return sum(phi(n, k, h) for k in range(1, n + 1))


@dataclass
class DimensionTable:
    max_weight: int
    r: list[int]                       # r[n-1] = r_n
    h: dict[tuple[int, int], int] = field(default_factory=dict)

    def h1(self, n: int) -> int:
        return self.h[(n, 1)]

    def row(self, n: int) -> list[int]:
        """``[h_{n,1}, ..., h_{n,n}]``."""
        return [self.h[(n, k)] for k in range(1, n + 1)]

    def series_checks(self) -> dict[str, bool]:
        """Truncated identities ``H_j = H_1^j`` and ``(1 - H_1) R = 1``."""
        N = self.max_weight
        R = [1] + self.r
        H1 = [0] + [self.h[(n, 1)] for n in range(1, N + 1)]

        def mul(a, b):
            return [sum(a[i] * b[m - i] for i in range(m + 1)) for m in range(N + 1)]

        power = [1] + [0] * N
        powers_ok = True
        for j in range(1, N + 1):
            power = mul(power, H1)
            Hj = [int(j == 0)] + [self.h.get((n, j), 0) for n in range(1, N + 1)]
            if power != Hj:
                powers_ok = False
        one_minus = [1 - H1[0]] + [-c for c in H1[1:]]
        inverse_ok = mul(one_minus, R) == [1] + [0] * N
        return {"H_j = H_1^j": powers_ok, "(1 - H_1) R = 1": inverse_ok}


def dimension_table(N: int) -> DimensionTable:
    if N < 1:
        raise ValueError("N must be >= 1")
    r = [count_forests(n) for n in range(1, N + 1)]
    h1 = [theta(n, r) for n in range(1, N + 1)]
    h: dict[tuple[int, int], int] = {}
    for n in range(1, N + 1):
        for k in range(1, n + 1):
            h[(n, k)] = phi(n, k, h1)
    return DimensionTable(N, r, h)


def primitive_coordinates(p) -> dict[tuple[int, int], Fraction]:
    """Coordinates of a primitive over the bases ``primitive_basis(w)``, keyed ``(w, index)``."""
    p = as_element(p)
    out: dict[tuple[int, int], Fraction] = {}
    for w, part in p.weight_split().items():
        if w == 0:
            raise ArithmeticError("a primitive has no constant term")
        solver = _coordinate_solver(w)
        coords = solver.coordinates(part.terms)
        if coords is None:
            raise ArithmeticError(f"weight-{w} part is not primitive")
        for i, c in coords.items():
            out[(w, i)] = c
    return dict(sorted(out.items()))


_SOLVERS: dict[int, EchelonBasis] = {}


def _coordinate_solver(w: int) -> EchelonBasis:
    hit = _SOLVERS.get(w)
    if hit is None:
        hit = EchelonBasis()
        for e in primitive_basis(w).elements:
            hit.add(e.terms)
        with _BASIS_LOCK:
            hit = _SOLVERS.setdefault(w, hit)
    return hit
