"""Exact rational linear algebra on sparse rows.

Rows are dictionaries {column: Fraction} without explicit zeros. Elimination is
Gauss-Jordan with the smallest nonzero column of each incoming row as pivot, so
results only depend on the row order and are identical across runs.
"""
from fractions import Fraction

import numpy as np
import scipy.linalg

from .. import settings
from ..errors import SingularSystemError


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x).limit_denominator()


def sparse_row(values):
    """Sparse row from a dense sequence."""
    return {j: as_fraction(v) for j, v in enumerate(values) if v != 0}


def dense_row(row, ncols):
    out = [Fraction(0)] * ncols
    for j, v in row.items():
        out[j] = v
    return out


class RowReducer:
    """Incremental reduced row echelon form.

    Every stored pivot row is normalized to 1 at its pivot and is zero in all
    other pivot columns.
    """

    def __init__(self):
        self.pivots = {}

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, row):
        """Remainder of `row` modulo the span of the stored rows."""
        out = {j: v for j, v in row.items() if v != 0}
        for c in [c for c in out if c in self.pivots]:
            factor = out.get(c, 0)
            if factor == 0:
                continue
            for j, v in self.pivots[c].items():
                w = out.get(j, 0) - factor * v
                if w == 0:
                    out.pop(j, None)
                else:
                    out[j] = w
        return out

    def add(self, row):
        """Insert a row. Returns True if it increased the rank."""
        rem = self.reduce(row)
        if not rem:
            return False
        p = min(rem)
        inv = 1 / rem[p]
        rem = {j: v * inv for j, v in rem.items()}
        for c, prow in self.pivots.items():
            factor = prow.get(p, 0)
            if factor == 0:
                continue
            for j, v in rem.items():
                w = prow.get(j, 0) - factor * v
                if w == 0:
                    prow.pop(j, None)
                else:
                    prow[j] = w
        self.pivots[p] = rem
        return True

    def contains(self, row):
        return not self.reduce(row)


def rref(rows):
    """Reduced row echelon form. Returns (pivot rows sorted by pivot, pivot columns)."""
    reducer = RowReducer()
    for row in rows:
        reducer.add(row)
    cols = sorted(reducer.pivots)
    return [reducer.pivots[c] for c in cols], cols


def rank(rows):
    reducer = RowReducer()
    for row in rows:
        reducer.add(row)
    return reducer.rank


def nullspace(rows, ncols):
    """Basis of {x : row . x = 0 for every row}, one vector per free column.

    Returns a list of dense Fraction lists ordered by free column.
    """
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for p, prow in zip(pivots, reduced):
            coef = prow.get(f, 0)
            if coef != 0:
                v[p] = -coef
        basis.append(v)
    return basis


def solve(rows, rhs, ncols):
    """Unique solution of A x = rhs over the rationals.

    Raises SingularSystemError if the system is inconsistent or underdetermined.
    """
    if len(rows) != len(rhs):
        raise SingularSystemError(f"{len(rows)} rows but {len(rhs)} right-hand sides")
    augmented = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        b = as_fraction(b)
        if b != 0:
            r[ncols] = b
        augmented.append(r)
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        raise SingularSystemError("inconsistent linear system")
    if len(pivots) != ncols:
        raise SingularSystemError(f"system of rank {len(pivots)} in {ncols} unknowns has no unique solution")
    x = [Fraction(0)] * ncols
    for p, prow in zip(pivots, reduced):
        x[p] = prow.get(ncols, Fraction(0))
    return x


def matmul(a, b):
    """Product of two dense Fraction matrices given as lists of lists."""
    inner = len(b)
    cols = len(b[0]) if inner else 0
    return [[sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(cols)]
            for i in range(len(a))]


def matvec(a, x):
    return [sum((a_ij * x_j for a_ij, x_j in zip(row, x)), Fraction(0)) for row in a]


def inverse(a):
    """Inverse of a small dense Fraction matrix."""
    n = len(a)
    rows = [sparse_row(r) for r in a]
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        cols.append(solve(rows, e, n))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def float_nullspace(matrix, rtol=None):
    """Null space of a dense float matrix via SVD with a relative cut."""
    rtol = settings.rank_rtol if rtol is None else rtol
    return scipy.linalg.null_space(np.asarray(matrix, dtype=float), rcond=rtol)


def float_rank(matrix, rtol=None):
    rtol = settings.rank_rtol if rtol is None else rtol
    a = np.asarray(matrix, dtype=float)
    if a.size == 0:
        return 0
    s = scipy.linalg.svdvals(a)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))
