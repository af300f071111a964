"""Exact linear algebra over the rationals.

Two representations are used. Dense matrices are lists of rows of
``Fraction`` and go through fraction-free Bareiss elimination for
determinants and ranks. Sparse vectors are ``dict[int, Fraction]`` with no
zero entries; :class:`RowSpace` keeps a reduced echelon basis of their span
and is what the subspace computations (lower central series, ideals,
quotients) run on.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

SparseVec = Dict[int, Fraction]
Matrix = List[List[Fraction]]


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], int]:
    """Scale every row to integers; return the rows and the product of scales."""
    out = []
    scale = 1
    for row in rows:
        den = 1
        for x in row:
            x = Fraction(x)
            den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(Fraction(x) * den) for x in row])
        scale *= den
    return out, scale


def determinant(m: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant of a square matrix by fraction-free Bareiss elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    a, scale = _integer_rows(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], scale)


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank over the rationals (fraction-free elimination)."""
    if not m:
        return 0
    a, _ = _integer_rows(m)
    nrows, ncols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, nrows):
            aic = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, ncols):
                row_i[j] = (row_i[j] * p - aic * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
    return r


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


# -- sparse vectors ---------------------------------------------------------


def sparse(items: Iterable[tuple[int, object]]) -> SparseVec:
    """Build a sparse vector, summing duplicates and dropping zeros."""
    out: SparseVec = {}
    for k, v in items:
        s = out.get(k, 0) + Fraction(v)
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def axpy(y: SparseVec, a: Fraction, x: Mapping[int, Fraction]) -> None:
    """In place ``y += a * x``."""
    if not a:
        return
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def scale(a: Fraction, x: Mapping[int, Fraction]) -> SparseVec:
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


def to_dense(x: Mapping[int, Fraction], n: int) -> List[Fraction]:
    out = [Fraction(0)] * n
    for k, v in x.items():
        out[k] = v
    return out


class RowSpace:
    """Span of sparse vectors, kept in reduced row echelon form.

    Each basis row is keyed by its pivot, the largest index in its support,
    with pivot coefficient 1; no other row has a nonzero entry at a pivot.
    Reducing a vector therefore leaves it supported on non-pivot indices,
    which is exactly its coordinate vector in the complementary coordinate
    basis. Choosing the largest index as pivot keeps the smaller indices as
    quotient representatives.
    """

    def __init__(self, vectors: Iterable[Mapping[int, Fraction]] = ()):
        self.rows: Dict[int, SparseVec] = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> set[int]:
        return set(self.rows)

    def reduce(self, v: Mapping[int, Fraction]) -> SparseVec:
        out = dict(v)
        for p in [p for p in out if p in self.rows]:
            c = out.get(p)
            if c:
                axpy(out, -c, self.rows[p])
        return out

    def contains(self, v: Mapping[int, Fraction]) -> bool:
        return not self.reduce(v)

    def add(self, v: Mapping[int, Fraction]) -> bool:
        """Insert ``v``; return whether the dimension grew."""
        r = self.reduce(v)
        if not r:
            return False
        p = max(r)
        r = scale(1 / r[p], r)
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                axpy(row, -c, r)
        self.rows[p] = r
        return True

    def basis(self) -> List[SparseVec]:
        return [dict(self.rows[p]) for p in sorted(self.rows)]


def span_rank(vectors: Iterable[Mapping[int, Fraction]]) -> int:
    return RowSpace(vectors).dim


def solve_in_span(
    targets: Sequence[Mapping[int, Fraction]], v: Mapping[int, Fraction]
) -> Optional[List[Fraction]]:
    """Coefficients ``c`` with ``sum(c[i] * targets[i]) == v``, or None.

    ``targets`` must be linearly independent.
    """
    n = len(targets)
    # augment each target with a tag coordinate below every real index
    rows = RowSpace()
    tag_base = -n - 1
    for i, t in enumerate(targets):
        aug = dict(t)
        aug[tag_base + i] = Fraction(1)
        rows.add(aug)
    r = rows.reduce(v)
    if any(k >= 0 for k in r):
        return None
    # v - sum c_i t_i reduces to -(sum c_i tag_i) on tag coordinates
    return [-r.get(tag_base + i, Fraction(0)) for i in range(n)]
