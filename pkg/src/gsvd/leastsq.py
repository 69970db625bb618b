"""Least squares solves with the stacked operator, and the expand kernel.

expand(u) projects [u; 0] orthogonally onto range(Z) by solving
min |Z x - [u; 0]| and multiplying the solution by Z once more.  The
solver is either LSQR (no preconditioning) or a dense Householder QR of
the explicitly stacked matrix, which doubles as the reference path.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import stacked_adjoint, stacked_apply
from .errors import NonConvergenceError, NotRegularError


@dataclass
class LsConfig:
    method: str = "lsqr"          # "lsqr" or "dense_qr"
    lsqr_tol: float = 1e-10
    lsqr_maxit: int | None = None  # default 10*(m+p)
    dense_limit: int = 5000

    def __post_init__(self):
        if self.method not in ("lsqr", "dense_qr"):
            raise ValueError("method must be 'lsqr' or 'dense_qr'")
        if not self.lsqr_tol > 0:
            raise ValueError("lsqr_tol must be positive")


def lsqr(z, b, tol, maxit):
    """Unpreconditioned LSQR on the stacked operator.

    Stops when |Z^T r| <= tol * |Z| * |r| (least squares test) or when
    |r| <= tol * (|b| + |Z| |x|) (compatible system test), with |Z|
    estimated from the accumulated bidiagonalization.  Returns
    (x, iterations); raises NonConvergenceError past maxit, carrying the
    best iterate.
    """
    b = np.asarray(b, dtype=np.float64)
    n = z.n
    x = np.zeros(n)
    beta = np.linalg.norm(b)
    if beta == 0.0:
        return x, 0
    u = b / beta
    v = stacked_adjoint(z, u)
    alfa = np.linalg.norm(v)
    if alfa == 0.0:
        return x, 0  # b is orthogonal to range(Z)
    v = v / alfa
    w = v.copy()
    phibar = beta
    rhobar = alfa
    bnorm = beta
    anorm2 = alfa * alfa
    for itn in range(1, maxit + 1):
        u = stacked_apply(z, v) - alfa * u
        beta = np.linalg.norm(u)
        if beta > 0.0:
            u = u / beta
        anorm2 += beta * beta
        v = stacked_adjoint(z, u) - beta * v
        alfa = np.linalg.norm(v)
        if alfa > 0.0:
            v = v / alfa
        anorm2 += alfa * alfa

        rho = np.hypot(rhobar, beta)
        cs = rhobar / rho
        sn = beta / rho
        theta = sn * alfa
        rhobar = -cs * alfa
        phi = cs * phibar
        phibar = sn * phibar
        x = x + (phi / rho) * w
        w = v - (theta / rho) * w

        anorm = np.sqrt(anorm2)
        rnorm = phibar
        arnorm = alfa * abs(cs) * phibar
        if rnorm <= tol * (bnorm + anorm * np.linalg.norm(x)):
            return x, itn
        if arnorm <= tol * anorm * rnorm:
            return x, itn
        if beta == 0.0 or alfa == 0.0:
            return x, itn
    raise NonConvergenceError(f"LSQR did not converge in {maxit} iterations",
                              x=x, iterations=maxit)


class DenseQrSolver:
    """Householder QR of the explicitly stacked Z, reusable across solves."""

    def __init__(self, z):
        if z.m + z.p < z.n:
            raise NotRegularError("stacked matrix has fewer rows than columns")
        self.z = z
        zd = z.to_dense()
        self.q, self.r = np.linalg.qr(zd)
        scale = max(z.norm_bound, 1e-300)
        if z.n and np.abs(np.diag(self.r)).min() < 1e-12 * scale:
            raise NotRegularError("pair is not regular: stacked matrix is rank deficient")

    def solve(self, b):
        y = self.q.T @ b
        x = scipy.linalg.solve_triangular(self.r, y)
        return x, 1


class LsqrSolver:
    """Thin stateless wrapper so both methods share a solve() interface."""

    def __init__(self, z, cfg):
        self.z = z
        self.tol = cfg.lsqr_tol
        self.maxit = cfg.lsqr_maxit or 10 * (z.m + z.p)

    def solve(self, b):
        return lsqr(self.z, b, self.tol, self.maxit)


def make_solver(z, cfg=None):
    """Build a reusable least squares engine for the given operator."""
    cfg = cfg or LsConfig()
    if cfg.method == "dense_qr":
        if z.m + z.p > cfg.dense_limit:
            raise ValueError(
                f"dense_qr limited to {cfg.dense_limit} stacked rows, have {z.m + z.p}")
        return DenseQrSolver(z)
    return LsqrSolver(z, cfg)


def solve_ls(z, b, cfg=None):
    """One-shot min |Z x - b| solve.  Returns (x, iterations)."""
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (z.m + z.p,):
        raise ValueError(f"rhs has length {len(b)}, expected {z.m + z.p}")
    return make_solver(z, cfg).solve(b)


def expand(z, u, cfg=None, solver=None):
    """Project [u; 0] onto range(Z): one least squares solve plus one apply.

    Returns the projected vector of length m+p.  Pass a prebuilt solver to
    amortize a dense QR factorization over many calls.
    """
    u = np.asarray(u, dtype=np.float64)
    if u.shape != (z.m,):
        raise ValueError(f"u has length {len(u)}, expected {z.m}")
    rhs = np.concatenate([u, np.zeros(z.p)])
    if solver is None:
        solver = make_solver(z, cfg)
    x, _ = solver.solve(rhs)
    return stacked_apply(z, x)
