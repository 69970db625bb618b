"""Iterated classical Gram-Schmidt (CGS2) and vector normalization.

A second Gram-Schmidt pass is triggered when the first pass reduces the
vector norm by more than ETA = 1/sqrt(2), the usual selective
reorthogonalization criterion.  At most two passes are performed.
"""

import numpy as np

from .errors import BreakdownError

ETA = 1.0 / np.sqrt(2.0)
EPS_BREAKDOWN = 1e-14


def orthog(v, basis):
    """Orthogonalize v against the orthonormal columns of basis.

    Returns (v_orth, coeffs) where coeffs are the accumulated projection
    coefficients, so v = v_orth + basis @ coeffs up to rounding.  Raises
    BreakdownError when the output norm falls below EPS_BREAKDOWN times
    the input norm (v lies numerically in the span of the basis).
    """
    v_orth, coeffs, _ = orthog_passes(v, basis)
    return v_orth, coeffs


def orthog_passes(v, basis):
    """Like orthog() but also reports the number of Gram-Schmidt passes."""
    v = np.asarray(v, dtype=np.float64)
    ncols = basis.shape[1] if basis.ndim == 2 else 0
    if ncols == 0:
        return v.copy(), np.zeros(0), 0
    if basis.shape[0] != v.shape[0]:
        raise ValueError("vector length does not match basis rows")
    norm_in = np.linalg.norm(v)
    coeffs = basis.T @ v
    w = v - basis @ coeffs
    passes = 1
    norm1 = np.linalg.norm(w)
    if norm1 < ETA * norm_in:
        c2 = basis.T @ w
        w = w - basis @ c2
        coeffs = coeffs + c2
        passes = 2
    if np.linalg.norm(w) <= EPS_BREAKDOWN * norm_in:
        raise BreakdownError("vector lies in the span of the basis",
                             vector=w, coeffs=coeffs)
    return w, coeffs, passes


def normalize(v, breakdown=0.0):
    """Return (norm, v/norm).  Signals breakdown when norm <= breakdown."""
    v = np.asarray(v, dtype=np.float64)
    norm = float(np.linalg.norm(v))
    if norm <= breakdown or norm == 0.0:
        raise BreakdownError(f"cannot normalize vector of norm {norm:.3e}", vector=v)
    return norm, v / norm
