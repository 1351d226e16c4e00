"""Exact sparse linear algebra over the rationals.

Vectors are dicts ``{key: Fraction}`` with no stored zeros. Keys only need to
be hashable and mutually comparable (pivots are chosen as the smallest key).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Sequence

Vector = dict


def axpy(a: Fraction, x: Vector, y: Vector) -> None:
    """``y += a * x`` in place, dropping zeros."""
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


class EchelonBasis:
    """Incrementally built row-echelon basis.

    Every accepted row remembers which combination of the *inserted* vectors
    produced it, so membership tests also return coordinates.
    """

    def __init__(self) -> None:
        self.pivots: dict[Hashable, int] = {}
        self.rows: list[Vector] = []
        self.combos: list[dict[int, Fraction]] = []
        self.n_inserted = 0

    def __len__(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: Vector) -> tuple[Vector, dict[int, Fraction]]:
        r = dict(vec)
        combo: dict[int, Fraction] = {}
        while r:
            hit = None
            for k in r:
                if k in self.pivots and (hit is None or k < hit):
                    hit = k
            if hit is None:
                break
            i = self.pivots[hit]
            row = self.rows[i]
            a = -r[hit] / row[hit]
            axpy(a, row, r)
            axpy(a, self.combos[i], combo)
        return r, combo

    def add(self, vec: Vector) -> bool:
        """Insert ``vec``; return True if it enlarged the span."""
        idx = self.n_inserted
        self.n_inserted += 1
        r, combo = self._reduce(vec)
        if not r:
            return False
        combo[idx] = combo.get(idx, 0) + 1
        pivot = min(r)
        self.pivots[pivot] = len(self.rows)
        self.rows.append(r)
        self.combos.append(combo)
        return True

    def contains(self, vec: Vector) -> bool:
        return not self._reduce(vec)[0]

    def residual(self, vec: Vector) -> Vector:
        return self._reduce(vec)[0]

    def coordinates(self, vec: Vector) -> dict[int, Fraction] | None:
        """Coefficients of ``vec`` over the inserted vectors, or None if outside the span.

        Only meaningful when every inserted vector was independent.
        """
        r, combo = self._reduce(vec)
        if r:
            return None
        return {k: -v for k, v in combo.items() if v}


def rank(vectors: Iterable[Vector]) -> int:
    basis = EchelonBasis()
    for v in vectors:
        basis.add(v)
    return len(basis)


def independent_subset(vectors: Sequence[Vector]) -> list[int]:
    """Indices of a greedy maximal independent subfamily, in input order."""
    basis = EchelonBasis()
    return [i for i, v in enumerate(vectors) if basis.add(v)]


def nullspace(equations: Sequence[Vector], nvars: int) -> list[list[Fraction]]:
    """Basis of ``{x in Q^nvars : sum_j eq[j] x_j = 0 for every eq}``.

    Equations are sparse dicts keyed by variable index.
    """
    rows: list[dict[int, Fraction]] = []
    pivot_of: dict[int, int] = {}
    for eq in equations:
        r = {k: Fraction(v) for k, v in eq.items() if v}
        for col, i in pivot_of.items():
            if col in r:
                axpy(-r[col], rows[i], r)
        if not r:
            continue
        col = min(r)
        inv = 1 / r[col]
        r = {k: v * inv for k, v in r.items()}
        for i, row in enumerate(rows):
            if col in row:
                axpy(-row[col], r, row)
        pivot_of[col] = len(rows)
        rows.append(r)
    free = [j for j in range(nvars) if j not in pivot_of]
    out = []
    for f in free:
        x = [Fraction(0)] * nvars
        x[f] = Fraction(1)
        for col, i in pivot_of.items():
            x[col] = -rows[i].get(f, 0)
        out.append(x)
    return out


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    m, k, n = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0)) for j in range(n)] for i in range(m)]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(row) for row in zip(*a)]


def inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse; raises ValueError if singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def is_invertible(a: Sequence[Sequence]) -> bool:
    if not a:
        return True
    return rank({j: Fraction(x) for j, x in enumerate(row) if x} for row in a) == len(a)
