"""Exact sparse linear algebra over the rationals.

Every linear computation in this package (cokernels, kernels, Hom spaces,
endomorphism radicals) reduces to small systems whose entries are rational
numbers, almost always 0 or +-1.  A dict-based sparse row format with
incremental Gaussian elimination is exact and fast enough at that scale.
No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

# A sparse vector: column index -> nonzero rational entry.
Row = dict

# A dense matrix: list of rows of Fractions.
Matrix = list

_ZERO = Fraction(0)
_ONE = Fraction(1)


def vec(entries) -> Row:
    """Build a sparse row from a mapping or (col, value) pairs.

    Explicit zeros are dropped and values are normalised to Fraction.
    """
    items = entries.items() if isinstance(entries, Mapping) else entries
    out: Row = {}
    for col, val in items:
        f = Fraction(val)
        if f:
            out[col] = f
    return out


def axpy(coeff: Fraction, x: Row, y: Row) -> None:
    """In-place y += coeff * x, keeping y free of stored zeros."""
    if not coeff:
        return
    for col, val in x.items():
        new = y.get(col, _ZERO) + coeff * val
        if new:
            y[col] = new
        else:
            y.pop(col, None)


class SparseRref:
    """Reduced row echelon form maintained incrementally.

    Rows are inserted one at a time.  Each incoming row is reduced against
    the pivots collected so far; a nonzero residual is normalised so its
    leading entry is 1, back-substituted into the stored rows, and kept.
    The pivot of a row is its smallest column index, so stored pivot rows
    have support {pivot} + free columns only.
    """

    def __init__(self) -> None:
        self.pivot_rows: dict = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def reduce(self, row: Row) -> Row:
        """Residual of `row` after eliminating all known pivots (fresh dict).

        A single pass in increasing column order suffices: stored rows are
        mutually reduced, so eliminating one pivot column can only introduce
        non-pivot columns.
        """
        out = dict(row)
        for col in sorted(out):
            if col in out and col in self.pivot_rows:
                axpy(-out[col], self.pivot_rows[col], out)
        return out

    def insert(self, row: Row):
        """Reduce `row`; if independent store it and return its pivot column.

        Returns None when the row is in the span of what was already seen.
        """
        residual = self.reduce(row)
        if not residual:
            return None
        piv = min(residual)
        inv = _ONE / residual[piv]
        normalised = {c: v * inv for c, v in residual.items()}
        for stored in self.pivot_rows.values():
            if piv in stored:
                axpy(-stored[piv], normalised, stored)
        self.pivot_rows[piv] = normalised
        return piv


def rank(rows: Iterable[Row]) -> int:
    ech = SparseRref()
    for row in rows:
        ech.insert(row)
    return ech.rank


def nullspace(rows: Iterable[Row], ncols: int) -> list:
    """Canonical basis of the kernel of the system ``rows . x = 0``.

    One basis vector per free column f, with entry 1 at f and entry -r_f at
    each pivot column whose stored row r has a nonzero coefficient at f.
    The basis is ordered by free column index, which makes downstream
    consumers deterministic.
    """
    ech = SparseRref()
    for row in rows:
        ech.insert(row)
    basis = []
    for free in range(ncols):
        if free in ech.pivot_rows:
            continue
        v: Row = {free: _ONE}
        for piv, stored in ech.pivot_rows.items():
            if free in stored:
                v[piv] = -stored[free]
        basis.append(v)
    return basis


def greedy_independent_rows(rows: Sequence[Row]) -> list:
    """Indices of the rows that grow the rank, scanned in the given order."""
    ech = SparseRref()
    picked = []
    for idx, row in enumerate(rows):
        if ech.insert(row) is not None:
            picked.append(idx)
    return picked


# Dense helpers for the small matrices attached to representations.

def zeros(nrows: int, ncols: int) -> Matrix:
    return [[_ZERO] * ncols for _ in range(nrows)]


def identity(n: int) -> Matrix:
    mat = zeros(n, n)
    for i in range(n):
        mat[i][i] = _ONE
    return mat


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Dense product a @ b; inner dimensions must agree."""
    if a and b and len(a[0]) != len(b):
        raise ValueError(
            f"matrix product shape mismatch: {len(a)}x{len(a[0])} @ {len(b)}x{len(b[0])}"
        )
    ncols = len(b[0]) if b else 0
    out = zeros(len(a), ncols)
    for i, arow in enumerate(a):
        orow = out[i]
        for k, aval in enumerate(arow):
            if not aval:
                continue
            brow = b[k]
            for j in range(ncols):
                bval = brow[j]
                if bval:
                    orow[j] += aval * bval
    return out


def mat_trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), _ZERO)


def invert_dense(a: Matrix) -> Matrix:
    """Inverse of a small dense square matrix by Gauss-Jordan elimination."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("invert_dense needs a square matrix")
    work = [[Fraction(x) for x in row] + irow for row, irow in zip(a, identity(n))]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        work[col], work[piv] = work[piv], work[col]
        inv = _ONE / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


def densify(rows: Sequence[Row], ncols: int) -> Matrix:
    out = zeros(len(rows), ncols)
    for i, row in enumerate(rows):
        for col, val in row.items():
            out[i][col] = val
    return out
