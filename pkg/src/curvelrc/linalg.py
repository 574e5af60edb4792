"""Exact linear algebra over GF(q) on row-major lists of int-encoded elements."""
from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch, Inconsistent


class MatrixGF:
    """A rows x cols matrix over a field, stored as a list of int rows."""

    def __init__(self, field, entries):
        self.field = field
        self.entries = [list(map(int, r)) for r in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch("ragged matrix")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, MatrixGF) and self.field == other.field and self.entries == other.entries

    def __repr__(self):
        return f"MatrixGF({self.rows}x{self.cols} over {self.field})"

    def columns(self, idx):
        return MatrixGF(self.field, [[r[j] for j in idx] for r in self.entries])

    def transpose(self):
        return MatrixGF(self.field, [list(c) for c in zip(*self.entries)]) if self.rows else self

    def to_numpy(self):
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    def rank(self):
        return rank(self.field, self.entries)


def _rows(m):
    return m.entries if isinstance(m, MatrixGF) else m


def rref(F, m):
    """Reduced row echelon form. Returns (rows, rank, pivot_columns)."""
    a = [list(r) for r in _rows(m)]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        piv = next((i for i in range(row, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = F.inv(a[row][col])
        a[row] = [F.mul(x, inv) for x in a[row]]
        for i in range(nrows):
            if i != row and a[i][col]:
                c = a[i][col]
                ri, rr = a[i], a[row]
                a[i] = [F.sub(x, F.mul(c, y)) if y else x for x, y in zip(ri, rr)]
        pivots.append(col)
        row += 1
    return a, row, pivots


def rank(F, m) -> int:
    return rref(F, m)[1]


def row_basis(F, m):
    r, k, _ = rref(F, m)
    return r[:k]


def kernel(F, m, ncols=None):
    """Basis of the right kernel {v : m v = 0}, one vector per free column."""
    rows = _rows(m)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    r, k, pivots = rref(F, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(r[i][f])
        basis.append(v)
    return basis


def solve(F, m, b):
    """One solution x of m x = b (free variables set to zero)."""
    rows = _rows(m)
    if len(rows) != len(b):
        raise DimensionMismatch("right-hand side length differs from row count")
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [bi] for r, bi in zip(rows, b)]
    r, k, pivots = rref(F, aug)
    if ncols in pivots:
        raise Inconsistent("system has no solution")
    x = [0] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = r[i][ncols]
    return x


def matmul(F, a, b):
    a, b = _rows(a), _rows(b)
    if a and len(a[0]) != len(b):
        raise DimensionMismatch("inner dimensions differ")
    bt = list(zip(*b))
    return [[F.sum(F.mul(x, y) for x, y in zip(r, c)) for c in bt] for r in a]


def vecmat(F, v, m):
    rows = _rows(m)
    if len(v) != len(rows):
        raise DimensionMismatch("vector length differs from row count")
    ncols = len(rows[0]) if rows else 0
    out = [0] * ncols
    for c, r in zip(v, rows):
        if c:
            out = [F.add(o, F.mul(c, x)) for o, x in zip(out, r)]
    return out


def det(F, m):
    a = [list(r) for r in _rows(m)]
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionMismatch("determinant of a non-square matrix")
    d = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            d = F.neg(d)
        d = F.mul(d, a[col][col])
        inv = F.inv(a[col][col])
        for i in range(col + 1, n):
            if a[i][col]:
                c = F.mul(a[i][col], inv)
                a[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(a[i], a[col])]
    return d


def all_rxr_submatrices_invertible(F, m, cap: int = 10 ** 7):
    """Check every r x r column-submatrix of an r x n matrix.

    Returns (True, None) or (False, first_failing_column_set) with column sets
    visited in lexicographic order.
    """
    rows = _rows(m)
    r = len(rows)
    n = len(rows[0]) if rows else 0
    if r > n:
        raise DimensionMismatch("more rows than columns")
    if comb(n, r) > cap:
        raise BudgetExceeded(f"C({n},{r}) exceeds cap {cap}")
    for cols in combinations(range(n), r):
        sub = [[row[j] for j in cols] for row in rows]
        if rank(F, sub) < r:
            return False, cols
    return True, None
