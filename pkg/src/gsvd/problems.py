"""Built-in test problem generators."""

import numpy as np

from .core import SparseMatrix


def gen_diagonal_problem(n, seed=0):
    """Diagonal pair A = C D, B = S D with known generalized singular values.

    C has diagonal c_i = (n-i+1)/(2n), S = sqrt(I - C^2), and D has diagonal
    ceil(4i/n) + r_i with r_i uniform on [0, 1] drawn from the given seed
    (PCG64).  The generalized singular values are c_i/s_i regardless of D;
    the largest one is 0.5/sqrt(0.75) = 0.57735 for every n.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    i = np.arange(1, n + 1, dtype=np.float64)
    c = (n - i + 1.0) / (2.0 * n)
    s = np.sqrt(1.0 - c * c)
    rng = np.random.default_rng(seed)
    d = np.ceil(4.0 * i / n) + rng.uniform(0.0, 1.0, size=n)
    return SparseMatrix.diagonal(c * d), SparseMatrix.diagonal(s * d)


def gen_bidiagonal_regularizer(n):
    """(n+1) x n bidiagonal matrix with 1 on the diagonal, -1 below it."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rows = np.concatenate([np.arange(n), np.arange(1, n + 1)])
    cols = np.concatenate([np.arange(n), np.arange(n)])
    vals = np.concatenate([np.ones(n), -np.ones(n)])
    return SparseMatrix.from_coo(n + 1, n, rows, cols, vals)
