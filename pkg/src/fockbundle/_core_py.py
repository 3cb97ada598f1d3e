"""Pure-numpy implementations of the hot kernels.

Call surface mirrors the compiled module ``fockbundle._core`` exactly, so
``fockbundle.backend`` can select either at import time.  Results are
deterministic for fixed inputs; agreement with the compiled kernels is
floating-point-close (asserted at 1e-12 relative in the test suite), not
bitwise.
"""

import numpy as np

BACKEND_NAME = "python"


def eval_terms(e0, e1, c, z0, z1):
    """Evaluate sum_k c[k] * z0**e0[k] * z1**e1[k] at a batch of points.

    Parameters
    ----------
    e0, e1 : int64 arrays, shape (K,)
        Non-negative exponents of the two coordinates per term.
    c : complex128 array, shape (K,)
        Term coefficients (normalization already folded in).
    z0, z1 : complex128 arrays, shape (N,)
        Evaluation points.

    Returns
    -------
    complex128 array, shape (N,)
    """
    z0 = np.asarray(z0, dtype=np.complex128)
    z1 = np.asarray(z1, dtype=np.complex128)
    out = np.zeros(z0.shape, dtype=np.complex128)
    for k in range(len(c)):
        out += c[k] * (z0 ** int(e0[k])) * (z1 ** int(e1[k]))
    return out


def _horner(coeffs_desc, x):
    p = np.zeros_like(x)
    dp = np.zeros_like(x)
    for a in coeffs_desc:
        dp = dp * x + p
        p = p * x + a
    return p, dp


def aberth(coeffs, x, max_iters, tol):
    """Aberth-Ehrlich simultaneous root iteration.

    Parameters
    ----------
    coeffs : complex128 array, shape (d+1,)
        Polynomial coefficients in ascending order; coeffs[-1] != 0.
    x : complex128 array, shape (d,)
        Initial guesses, overwritten with the converged roots.
    max_iters : int
    tol : float
        Step tolerance, relative to 1 + |root|.

    Returns
    -------
    int
        Iterations used, or -1 if the budget was exhausted.
    """
    d = len(coeffs) - 1
    if d == 0:
        return 0
    coeffs_desc = np.asarray(coeffs, dtype=np.complex128)[::-1]
    abs_desc = np.abs(coeffs_desc)
    # Residual floor: a point is a root to working precision once |p(x)|
    # drops below the rounding level of the evaluation itself.
    resid_eps = 1e-15

    for it in range(1, max_iters + 1):
        p, dp = _horner(coeffs_desc, x)
        scale, _ = _horner(abs_desc, np.abs(x).astype(np.complex128))
        settled = np.abs(p) <= resid_eps * np.abs(scale)
        if np.all(settled):
            return it
        dp = np.where(dp == 0, 1e-300, dp)
        newton = p / dp
        diff = x[:, None] - x[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        denom = 1.0 - newton * s
        denom = np.where(denom == 0, 1.0, denom)
        w = newton / denom
        w = np.where(settled, 0.0, w)
        x -= w
        if np.all(np.abs(w) <= tol * (1.0 + np.abs(x))):
            return it
    return -1
