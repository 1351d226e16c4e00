"""Finite-dimensional comodules over the tree Hopf algebra.

A comodule with basis ``e_0..e_n`` is described by a lower unitriangular
matrix ``Q`` of algebra elements, ``Delta_C(e_i) = sum_j Q[i][j] (x) e_j``.
It is generated by a strictly upper triangular matrix ``P`` of primitives,
with ``p_{a,b}`` stored at ``P[a-1][b]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Element, Tensor, as_element, parse_element
from .growth import chain, pi1
from .hopf import coproduct, counit, is_primitive
from .linalg import EchelonBasis, inverse, nullspace

__all__ = [
    "decompositions",
    "PrimitiveMatrix",
    "StructureMatrix",
    "GroupElement",
    "build_comodule",
    "verify_coassociative",
    "extract_family",
    "extract_by_projection",
    "Flag",
    "flag",
    "is_reduced",
    "act",
    "conjugate_check",
    "dump_record",
    "load_record",
]


def decompositions(i: int, j: int) -> list[list[tuple[int, int]]]:
    """Splittings of ``{i..j}`` into consecutive intervals, listed bottom-up."""
    if i > j:
        raise ValueError(f"empty interval I_{{{i},{j}}}")
    out = []
    inner = j - i
    for mask in range(1 << inner):
        parts, start = [], i
        for k in range(inner):
            if mask >> k & 1:
                parts.append((start, i + k))
                start = i + k + 1
        parts.append((start, j))
        out.append(parts)
    out.sort(key=lambda d: (len(d), d))
    return out


def _zero_square(n: int) -> list[list[Element]]:
    return [[Element.zero() for _ in range(n)] for _ in range(n)]


class PrimitiveMatrix:
    """``(n+1) x (n+1)`` strictly upper triangular matrix of primitives."""

    def __init__(self, rows: Sequence[Sequence], check: bool = True):
        m = [[as_element(x) for x in row] for row in rows]
        size = len(m)
        if size == 0 or any(len(r) != size for r in m):
            raise ValueError("a primitive matrix must be square and nonempty")
        for a in range(size):
            for b in range(size):
                if b <= a and m[a][b]:
                    raise ValueError(f"entry ({a}, {b}) must vanish: P is strictly upper triangular")
                if check and b > a and m[a][b] and not is_primitive(m[a][b]):
                    raise ValueError(f"p_{{{a + 1},{b}}} is not primitive: {m[a][b]}")
        self.rows = m

    @classmethod
    def from_family(cls, n: int, family: dict[tuple[int, int], object], check: bool = True) -> "PrimitiveMatrix":
        m = _zero_square(n + 1)
        for (a, b), x in family.items():
            if not 1 <= a <= b <= n:
                raise ValueError(f"p_{{{a},{b}}} is outside 1 <= i <= j <= {n}")
            m[a - 1][b] = as_element(x)
        return cls(m, check=check)

    @classmethod
    def zero(cls, n: int) -> "PrimitiveMatrix":
        return cls(_zero_square(n + 1), check=False)

    @property
    def n(self) -> int:
        return len(self.rows) - 1

    @property
    def size(self) -> int:
        return len(self.rows)

    def p(self, a: int, b: int) -> Element:
        return self.rows[a - 1][b]

    def family(self) -> dict[tuple[int, int], Element]:
        return {(a, b): self.p(a, b) for a in range(1, self.n + 1) for b in range(a, self.n + 1)}

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimitiveMatrix) and self.rows == other.rows

    def __repr__(self) -> str:
        return f"PrimitiveMatrix(n={self.n})"


class StructureMatrix:
    """Lower unitriangular matrix ``Q`` with ``Delta_C(e_i) = sum_j Q[i][j] (x) e_j``."""

    def __init__(self, rows: Sequence[Sequence]):
        m = [[as_element(x) for x in row] for row in rows]
        size = len(m)
        if size == 0 or any(len(r) != size for r in m):
            raise ValueError("a structure matrix must be square and nonempty")
        for i in range(size):
            if m[i][i] != Element.one():
                raise ValueError(f"Q[{i}][{i}] must be 1")
            for j in range(i + 1, size):
                if m[i][j]:
                    raise ValueError(f"Q[{i}][{j}] must vanish: Q is lower triangular")
        self.rows = m

    @classmethod
    def identity(cls, size: int) -> "StructureMatrix":
        m = _zero_square(size)
        for i in range(size):
            m[i][i] = Element.one()
        return cls(m)

    @property
    def n(self) -> int:
        return len(self.rows) - 1

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> Element:
        i, j = ij
        return self.rows[i][j]

    def replace(self, i: int, j: int, value) -> "StructureMatrix":
        """Copy with one entry changed; validity of the result is not checked beyond shape."""
        m = [list(r) for r in self.rows]
        m[i][j] = as_element(value)
        return StructureMatrix(m)

    def __eq__(self, other) -> bool:
        return isinstance(other, StructureMatrix) and self.rows == other.rows

    def __repr__(self) -> str:
        return f"StructureMatrix(n={self.n})"


def build_comodule(P: PrimitiveMatrix) -> StructureMatrix:
    """``Q[i][j] = sum over decompositions of {j+1..i} of p_{ik,jk} T ... T p_{i1,j1}``."""
    size = P.size
    m = _zero_square(size)
    for i in range(size):
        m[i][i] = Element.one()
        for j in range(i):
            total = Element.zero()
            for d in decompositions(j + 1, i):
                factors = [P.p(a, b) for a, b in reversed(d)]
                if all(factors):
                    total = total + chain(factors, check=False)
            m[i][j] = total
    return StructureMatrix(m)


def verify_coassociative(Q: StructureMatrix) -> bool:
    """``Delta(Q[i][j]) = sum_l Q[i][l] (x) Q[l][j]`` and ``eps(Q[i][j]) = delta_ij``."""
    size = Q.size
    for i in range(size):
        if counit(Q[i, i]) != 1:
            return False
        for j in range(i):
            if counit(Q[i, j]) != 0:
                return False
            rhs = Tensor.zero(2)
            for l in range(j, i + 1):
                if Q[i, l] and Q[l, j]:
                    rhs = rhs + Tensor.product(Q[i, l], Q[l, j])
            if coproduct(Q[i, j]) != rhs:
                return False
    return True


def extract_family(Q: StructureMatrix, check: bool = True) -> PrimitiveMatrix:
    """Recover ``P`` from ``Q`` by ``p_{a,b} = Q[b][a-1] - (all proper decompositions)``."""
    if check and not verify_coassociative(Q):
        raise ValueError("structure matrix is not coassociative")
    size = Q.size
    m = _zero_square(size)

    def p(a: int, b: int) -> Element:
        return m[a - 1][b]

    # shorter intervals first so every proper decomposition is already known
    for length in range(1, size):
        for a in range(1, size - length + 1):
            b = a + length - 1
            val = Q[b, a - 1]
            for d in decompositions(a, b):
                if len(d) == 1:
                    continue
                factors = [p(x, y) for x, y in reversed(d)]
                if all(factors):
                    val = val - chain(factors, check=False)
            m[a - 1][b] = val
    return PrimitiveMatrix(m, check=check)


def extract_by_projection(Q: StructureMatrix) -> PrimitiveMatrix:
    """``P = pi1(Q^T)`` entrywise."""
    size = Q.size
    m = _zero_square(size)
    for a in range(size):
        for b in range(a + 1, size):
            m[a][b] = pi1(Q[b, a])
    return PrimitiveMatrix(m, check=False)


# -- flags and types -----------------------------------------------------------

@dataclass
class Flag:
    """Canonical flag ``C_0 < C_1 < ... < C_k = C``.

    ``basis`` rows are vectors in the ``e``-coordinates; the first ``dims[l]``
    of them span ``C_l``.
    """

    dims: list[int]
    basis: list[list[Fraction]]

    @property
    def type(self) -> tuple[int, ...]:
        prev = 0
        out = []
        for d in self.dims:
            out.append(d - prev)
            prev = d
        return tuple(out)


def _trivial_modulo(Q: StructureMatrix, annihilator: list[list[Fraction]]) -> list[list[Fraction]]:
    """All ``x`` with ``Delta_C(x) - 1 (x) x`` in ``H (x) W``, ``W`` cut out by ``annihilator``."""
    size = Q.size
    eqs: dict[tuple, dict[int, Fraction]] = {}
    for r, a in enumerate(annihilator):
        for i in range(size):
            for j in range(i):
                if not a[j]:
                    continue
                for f, c in Q[i, j].terms.items():
                    row = eqs.setdefault((r, f), {})
                    row[i] = row.get(i, 0) + a[j] * c
    return nullspace(list(eqs.values()), size)


def flag(Q: StructureMatrix) -> Flag:
    """Solve for ``C_0`` and then ``C_{l+1}/C_l = (C/C_l)_0`` until the whole space is reached."""
    size = Q.size
    basis: list[list[Fraction]] = []
    echelon = EchelonBasis()
    dims: list[int] = []
    while len(basis) < size:
        if basis:
            annihilator = nullspace([{k: v for k, v in enumerate(b) if v} for b in basis], size)
        else:
            annihilator = [[Fraction(int(k == j)) for k in range(size)] for j in range(size)]
        step = _trivial_modulo(Q, annihilator)
        grew = False
        for v in step:
            if echelon.add({k: c for k, c in enumerate(v) if c}):
                basis.append(v)
                grew = True
        if not grew:
            raise ArithmeticError("flag stalled: the trivial part of a quotient vanished")
        dims.append(len(basis))
    return Flag(dims, basis)


def _blocks(type_: Sequence[int]) -> list[range]:
    out, start = [], 0
    for c in type_:
        out.append(range(start, start + c))
        start += c
    return out


def is_reduced(P: PrimitiveMatrix) -> tuple[int, ...] | None:
    """Type ``(c_0..c_k)`` if ``P`` has the reduced block form, else None."""
    size = P.size
    rows = P.rows
    type_: list[int] = []
    start = 0
    while start < size:
        end = start + 1
        # grow the zero diagonal block while the new column is zero on the block rows
        while end < size and not any(rows[r][end] for r in range(start, end)):
            end += 1
        type_.append(end - start)
        start = end
    blocks = _blocks(type_)
    for k in range(1, len(blocks)):
        rows_k, cols_k = blocks[k - 1], blocks[k]
        solver = EchelonBasis()
        for c in cols_k:
            vec = {}
            for r in rows_k:
                for f, v in rows[r][c].terms.items():
                    vec[(r, f)] = v
            if not solver.add(vec):
                return None
    return tuple(type_)


# -- the parabolic action ------------------------------------------------------

class GroupElement:
    """Invertible rational matrix with the block upper triangular profile of a type."""

    def __init__(self, matrix: Sequence[Sequence], type_: Sequence[int]):
        self.matrix = [[Fraction(x) for x in row] for row in matrix]
        self.type = tuple(type_)
        size = len(self.matrix)
        if sum(self.type) != size or any(len(r) != size for r in self.matrix):
            raise ValueError("matrix size does not match the type")
        blocks = _blocks(self.type)
        for bi, rb in enumerate(blocks):
            for bj in range(bi):
                for r in rb:
                    for c in blocks[bj]:
                        if self.matrix[r][c]:
                            raise ValueError("matrix is not block upper triangular for the type")
        self.inverse = inverse(self.matrix)  # raises on singular input

    @property
    def size(self) -> int:
        return len(self.matrix)


def _scalar_times(a: Sequence[Sequence[Fraction]], m: Sequence[Sequence[Element]]) -> list[list[Element]]:
    size = len(a)
    out = _zero_square(size)
    for i in range(size):
        for j in range(size):
            acc = Element.zero()
            for k in range(size):
                if a[i][k] and m[k][j]:
                    acc = acc + m[k][j].scale(a[i][k])
            out[i][j] = acc
    return out


def _times_scalar(m: Sequence[Sequence[Element]], a: Sequence[Sequence[Fraction]]) -> list[list[Element]]:
    size = len(a)
    out = _zero_square(size)
    for i in range(size):
        for j in range(size):
            acc = Element.zero()
            for k in range(size):
                if m[i][k] and a[k][j]:
                    acc = acc + m[i][k].scale(a[k][j])
            out[i][j] = acc
    return out


def act(g: GroupElement, P: PrimitiveMatrix) -> PrimitiveMatrix:
    """``g . P = g P g^{-1}``."""
    t = is_reduced(P)
    if t is not None and t != g.type:
        raise ValueError(f"group profile {g.type} does not match the type {t} of P")
    if g.size != P.size:
        raise ValueError("size mismatch")
    return PrimitiveMatrix(_times_scalar(_scalar_times(g.matrix, P.rows), g.inverse), check=False)


def conjugate_check(g: GroupElement, P: PrimitiveMatrix, P2: PrimitiveMatrix) -> bool:
    """``P2 = g P g^{-1}`` and the structure matrices satisfy ``Q2 = (g^T)^{-1} Q g^T``.

    The second identity is the basis change ``f_i = sum_j (g^T)^{-1}_{ij} e_j``
    carrying the comodule of ``P`` onto the comodule of ``P2``.
    """
    if act(g, P) != P2:
        return False
    Q, Q2 = build_comodule(P), build_comodule(P2)
    gt = [list(r) for r in zip(*g.matrix)]
    gt_inv = [list(r) for r in zip(*g.inverse)]
    return _times_scalar(_scalar_times(gt_inv, Q.rows), gt) == Q2.rows


# -- records -------------------------------------------------------------------

def dump_record(M: PrimitiveMatrix | StructureMatrix) -> dict:
    """``{"kind", "n", "entries": [{"i", "j", "element"}]}``; zero entries and the unit diagonal are omitted."""
    if isinstance(M, PrimitiveMatrix):
        entries = [{"i": a, "j": b, "element": x.render()}
                   for (a, b), x in sorted(M.family().items()) if x]
        return {"kind": "primitive", "n": M.n, "entries": entries}
    entries = [{"i": i, "j": j, "element": M[i, j].render()}
               for i in range(M.size) for j in range(i) if M[i, j]]
    return {"kind": "structure", "n": M.n, "entries": entries}


def load_record(rec: dict | str, check: bool = True) -> PrimitiveMatrix | StructureMatrix:
    if isinstance(rec, str):
        rec = json.loads(rec)
    try:
        n = int(rec["n"])
        kind = rec.get("kind", "primitive")
        entries = rec.get("entries", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix record: {exc}") from None
    if n < 0:
        raise ValueError("n must be >= 0")
    if kind == "primitive":
        fam = {(int(e["i"]), int(e["j"])): parse_element(e["element"]) for e in entries}
        return PrimitiveMatrix.from_family(n, fam, check=check)
    if kind == "structure":
        m = _zero_square(n + 1)
        for i in range(n + 1):
            m[i][i] = Element.one()
        for e in entries:
            i, j = int(e["i"]), int(e["j"])
            if not 0 <= j < i <= n:
                raise ValueError(f"structure entry ({i}, {j}) is not strictly below the diagonal")
            m[i][j] = parse_element(e["element"])
        return StructureMatrix(m)
    raise ValueError(f"unknown matrix kind {kind!r}")
