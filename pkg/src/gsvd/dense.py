"""Dense kernels for the projected problems.

The SVD and symmetric eigensolvers wrap LAPACK (via numpy/scipy); the CS
decomposition of a lower/upper projected pair is built on top of them.
Projected sizes never exceed a few tens of rows, so these are cheap.

Orderings are canonical: eigenvalues ascending, singular values descending,
CS pairs with s ascending (equivalently c/s descending).  Column signs are
not prescribed; callers must rely on reconstruction residuals, not entries.
"""

import numpy as np
import scipy.linalg

from .errors import NotCsPairError, SemiDefiniteError

EPS_CS = 1e-8


def dense_svd(m):
    """SVD of a dense matrix: (u, sigma, v) with sigma non-increasing.

    Columns of u and v are the left/right singular vectors.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.size and not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    return u, s, vh.T


def sym_eig(m):
    """Eigendecomposition of a symmetric matrix, eigenvalues ascending."""
    m = np.asarray(m, dtype=np.float64)
    scale = np.abs(m).max() if m.size else 0.0
    if m.size and np.abs(m - m.T).max() > 1e-12 * max(scale, 1e-300):
        raise ValueError("matrix is not symmetric")
    w, v = np.linalg.eigh(m)
    return w, v


def symdef_geig(a, b):
    """Solve a v = lambda b v for symmetric a and SPD b.

    Returns eigenvalues ascending and b-orthonormal eigenvectors.  Raises
    SemiDefiniteError when b has no usable Cholesky factorization.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    try:
        chol = np.linalg.cholesky(b)
    except np.linalg.LinAlgError as exc:
        raise SemiDefiniteError("pencil mass matrix is not positive definite") from exc
    bnorm = np.linalg.norm(b, 2) if b.size else 0.0
    if b.size and np.min(np.diag(chol)) ** 2 <= 1e-13 * bnorm:
        raise SemiDefiniteError("pencil mass matrix is numerically semi-definite")
    w, v = scipy.linalg.eigh(a, b)
    return w, v


class CsDecomposition:
    """CS decomposition of a projected pair {J, Jc}.

    J ((k+1) x k) and Jc (k x k) satisfy J^T J + Jc^T Jc = I and factor as
    J = X [diag(c); 0] Y^T and Jc = Xh diag(s) Y^T with orthogonal X
    ((k+1) x (k+1)), Xh, Y (k x k) and c_i^2 + s_i^2 = 1.
    """

    def __init__(self, x_big, x_hat, y, c, s):
        self.x_big = x_big
        self.x_hat = x_hat
        self.y = y
        self.c = np.asarray(c, dtype=np.float64)
        self.s = np.asarray(s, dtype=np.float64)

    @property
    def k(self):
        return len(self.c)

    def ratios(self):
        """Generalized singular values c_i/s_i (inf where s_i == 0)."""
        with np.errstate(divide="ignore"):
            return np.where(self.s > 0, self.c / np.where(self.s > 0, self.s, 1.0), np.inf)

    def reconstruct(self):
        """Return (J, Jc) rebuilt from the factors."""
        k = self.k
        cmat = np.zeros((k + 1, k))
        np.fill_diagonal(cmat, self.c)
        j = self.x_big @ cmat @ self.y.T
        jc = self.x_hat @ np.diag(self.s) @ self.y.T
        return j, jc


def _fill_orthonormal_columns(x, missing):
    """Complete columns of x (listed in `missing`) to an orthonormal basis."""
    nrows = x.shape[0]
    have = [i for i in range(x.shape[1]) if i not in missing]
    for idx in missing:
        for cand in range(nrows):
            w = np.zeros(nrows)
            w[cand] = 1.0
            # two CGS passes against the columns placed so far
            for _ in range(2):
                cols = x[:, have] if have else None
                if cols is not None and cols.size:
                    w = w - cols @ (cols.T @ w)
            norm = np.linalg.norm(w)
            if norm > 0.5:
                x[:, idx] = w / norm
                have.append(idx)
                break
        else:
            raise NotCsPairError("failed to complete orthonormal basis")
    return x


def cs_decompose(j, j_check):
    """CS decomposition of the pair {j, j_check}.

    The pair must stack to (nearly) orthonormal columns.  Values are
    returned with s ascending, i.e. c/s non-increasing; reordering is the
    caller's business.  The s-factorization is the SVD of j_check; c_i is
    the norm of j @ y_i, and the corresponding column of X is j @ y_i / c_i
    (completed to an orthonormal basis where c_i is negligible).
    """
    j = np.asarray(j, dtype=np.float64)
    jc = np.asarray(j_check, dtype=np.float64)
    k = jc.shape[0]
    if jc.shape != (k, k) or j.shape != (k + 1, k):
        raise ValueError(f"expected shapes ({k + 1},{k}) and ({k},{k}), "
                         f"got {j.shape} and {jc.shape}")
    gram = j.T @ j + jc.T @ jc - np.eye(k)
    if k and np.abs(gram).max() > 1e-10 * k:
        raise NotCsPairError(
            f"columns of [J; Jc] are not orthonormal (defect {np.abs(gram).max():.3e})")

    xh, s_desc, yt = np.linalg.svd(jc)
    # reverse so s is ascending (c/s descending)
    x_hat = xh[:, ::-1].copy()
    s = s_desc[::-1].copy()
    y = yt.T[:, ::-1].copy()

    jy = j @ y
    c = np.linalg.norm(jy, axis=0) if k else np.zeros(0)
    if np.any((c < EPS_CS) & (s < EPS_CS)):
        raise NotCsPairError("both c and s negligible for some column")

    x_big = np.zeros((k + 1, k + 1))
    missing = []
    for i in range(k):
        if c[i] > EPS_CS:
            x_big[:, i] = jy[:, i] / c[i]
        else:
            missing.append(i)
    missing.append(k)
    x_big = _fill_orthonormal_columns(x_big, missing)
    return CsDecomposition(x_big, x_hat, y, c, s)


def cs_sort(cs, which):
    """Reorder a CS decomposition by c/s (stable).

    which='largest' sorts ratios descending, 'smallest' ascending.  The
    trailing column of x_big is not part of the value ordering and stays.
    """
    ratios = cs.ratios()
    if which == "largest":
        order = np.argsort(-ratios, kind="stable")
    elif which == "smallest":
        order = np.argsort(ratios, kind="stable")
    else:
        raise ValueError("which must be 'largest' or 'smallest'")
    x_big = np.concatenate([cs.x_big[:, order], cs.x_big[:, -1:]], axis=1)
    return CsDecomposition(x_big, cs.x_hat[:, order], cs.y[:, order],
                           cs.c[order], cs.s[order])
