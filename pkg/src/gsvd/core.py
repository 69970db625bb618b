"""Sparse CSR matrices, the stacked two-matrix operator, and basic norms.

Matrices are real double precision and immutable after construction.  All
reductions are sequential over each row so that repeated runs are bitwise
reproducible.  Dense matrices (Lanczos bases, projected problems) are plain
numpy arrays throughout the package.
"""

import numpy as np


class SparseMatrix:
    """Real matrix in CSR form with sorted, deduplicated column indices."""

    def __init__(self, nrows, ncols, row_offsets, col_indices, values):
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        self.row_offsets = np.ascontiguousarray(row_offsets, dtype=np.int64)
        self.col_indices = np.ascontiguousarray(col_indices, dtype=np.int64)
        self.values = np.ascontiguousarray(values, dtype=np.float64)
        self._validate()
        self._transpose = None

    def _validate(self):
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("negative matrix dimension")
        if self.row_offsets.shape != (self.nrows + 1,):
            raise ValueError("row_offsets must have length nrows+1")
        if self.nrows >= 0 and (len(self.row_offsets) == 0 or self.row_offsets[0] != 0):
            raise ValueError("row_offsets must start at 0")
        if np.any(np.diff(self.row_offsets) < 0):
            raise ValueError("row_offsets must be non-decreasing")
        if self.row_offsets[-1] != len(self.values):
            raise ValueError("row_offsets[-1] must equal the number of stored values")
        if len(self.col_indices) != len(self.values):
            raise ValueError("col_indices and values must have equal length")
        if len(self.col_indices) and (
            self.col_indices.min() < 0 or self.col_indices.max() >= self.ncols
        ):
            raise ValueError("column index out of range")
        # strictly increasing columns within each row
        for i in range(self.nrows):
            lo, hi = self.row_offsets[i], self.row_offsets[i + 1]
            if hi - lo > 1 and np.any(np.diff(self.col_indices[lo:hi]) <= 0):
                raise ValueError(f"columns in row {i} not strictly increasing")
        if len(self.values) and not np.all(np.isfinite(self.values)):
            raise ValueError("stored values must be finite")

    @property
    def nnz(self):
        return len(self.values)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @classmethod
    def from_coo(cls, nrows, ncols, rows, cols, values):
        """Build canonical CSR from COO triplets; duplicates are summed."""
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        values = np.asarray(values, dtype=np.float64)
        if not (len(rows) == len(cols) == len(values)):
            raise ValueError("rows, cols, values must have equal length")
        if len(rows):
            if rows.min() < 0 or rows.max() >= nrows:
                raise ValueError("row index out of range")
            if cols.min() < 0 or cols.max() >= ncols:
                raise ValueError("column index out of range")
            order = np.lexsort((cols, rows))
            rows, cols, values = rows[order], cols[order], values[order]
            first = np.empty(len(rows), dtype=bool)
            first[0] = True
            first[1:] = (rows[1:] != rows[:-1]) | (cols[1:] != cols[:-1])
            starts = np.flatnonzero(first)
            values = np.add.reduceat(values, starts)
            rows, cols = rows[starts], cols[starts]
        counts = np.bincount(rows, minlength=nrows) if len(rows) else np.zeros(nrows, dtype=np.int64)
        offsets = np.zeros(nrows + 1, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])
        return cls(nrows, ncols, offsets, cols, values)

    @classmethod
    def from_dense(cls, dense):
        dense = np.asarray(dense, dtype=np.float64)
        if dense.ndim != 2:
            raise ValueError("expected a 2-d array")
        rows, cols = np.nonzero(dense)
        return cls.from_coo(dense.shape[0], dense.shape[1], rows, cols, dense[rows, cols])

    @classmethod
    def identity(cls, n):
        idx = np.arange(n, dtype=np.int64)
        return cls(n, n, np.arange(n + 1, dtype=np.int64), idx, np.ones(n))

    @classmethod
    def diagonal(cls, d):
        d = np.asarray(d, dtype=np.float64)
        n = len(d)
        return cls(n, n, np.arange(n + 1, dtype=np.int64), np.arange(n, dtype=np.int64), d)

    @classmethod
    def empty(cls, nrows, ncols):
        return cls(nrows, ncols, np.zeros(nrows + 1, dtype=np.int64), [], [])

    def to_dense(self):
        out = np.zeros((self.nrows, self.ncols))
        for i in range(self.nrows):
            lo, hi = self.row_offsets[i], self.row_offsets[i + 1]
            out[i, self.col_indices[lo:hi]] = self.values[lo:hi]
        return out

    def transpose(self):
        """Explicit transpose, built once and cached."""
        if self._transpose is None:
            rows = np.repeat(np.arange(self.nrows, dtype=np.int64),
                             np.diff(self.row_offsets))
            self._transpose = SparseMatrix.from_coo(
                self.ncols, self.nrows, self.col_indices, rows, self.values)
        return self._transpose


def _row_reduce(m, contributions):
    """Sum `contributions` (aligned with m.values) within each row."""
    out = np.zeros(m.nrows)
    if m.nnz == 0 or m.nrows == 0:
        return out
    starts = m.row_offsets[:-1]
    nonempty = starts < m.row_offsets[1:]
    if np.any(nonempty):
        out[nonempty] = np.add.reduceat(contributions, starts[nonempty])
    return out


def spmv(m, x):
    """CSR matrix-vector product with row-wise sequential summation."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (m.ncols,):
        raise ValueError(f"dimension mismatch: matrix is {m.shape}, x has length {len(x)}")
    return _row_reduce(m, m.values * x[m.col_indices])


def spmv_transpose(m, y):
    """Product with the transpose, via the cached explicit transpose."""
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (m.nrows,):
        raise ValueError(f"dimension mismatch: matrix is {m.shape}, y has length {len(y)}")
    return spmv(m.transpose(), y)


def inf_norm(m):
    """Maximum absolute row sum; 0 for an empty matrix."""
    if m.nnz == 0 or m.nrows == 0:
        return 0.0
    return float(_row_reduce(m, np.abs(m.values)).max())


class StackedOperator:
    """The operator Z = [A; gamma*B] applied without forming Z explicitly.

    `norm_bound` overestimates the 2-norm of the (never formed) triangular
    QR factor of Z: sqrt(m+p) * max(|A|_inf, gamma*|B|_inf).
    """

    def __init__(self, a, b, gamma=1.0):
        if a.ncols != b.ncols:
            raise ValueError("A and B must have the same number of columns")
        if not gamma > 0:
            raise ValueError("gamma must be positive")
        self.a = a
        self.b = b
        self.gamma = float(gamma)
        self.m = a.nrows
        self.p = b.nrows
        self.n = a.ncols
        self.norm_inf = max(inf_norm(a), self.gamma * inf_norm(b))
        self.norm_bound = np.sqrt(self.m + self.p) * self.norm_inf

    @property
    def shape(self):
        return (self.m + self.p, self.n)

    def to_dense(self):
        return np.vstack([self.a.to_dense(), self.gamma * self.b.to_dense()])


def stacked_apply(z, x):
    """[A x; gamma B x]."""
    return np.concatenate([spmv(z.a, x), z.gamma * spmv(z.b, x)])


def stacked_adjoint(z, y):
    """A^T y_top + gamma B^T y_bottom."""
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (z.m + z.p,):
        raise ValueError(f"dimension mismatch: operator is {z.shape}, y has length {len(y)}")
    return spmv_transpose(z.a, y[:z.m]) + z.gamma * spmv_transpose(z.b, y[z.m:])
