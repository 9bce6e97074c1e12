"""Pure numpy implementations of the numerical kernels.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
The solver modules never import either file directly; they go through
:mod:`lcpkit._backend`, which picks the compiled version when it is built.

Matrices are passed pre-shifted: ``A = M + I`` and ``B = M - I``.
"""

import warnings
from itertools import combinations

import numpy as np
import scipy.linalg

NAME = "python"


def smooth_abs(p, x):
    a = np.abs(x)
    e = np.exp(-p * a)
    return a + np.log1p(e + e * e) / p


def abs_slope(p, x):
    a = np.abs(x)
    e = np.exp(-p * a)
    return np.sign(x) * (-np.expm1(-2.0 * p * a)) / (1.0 + e + e * e)


def residual_true(A, B, q, x):
    return A @ x + B @ np.abs(x) + q


def residual_smooth(A, B, q, p, x):
    return A @ x + B @ smooth_abs(p, x) + q


def merit_grad(A, B, q, p, x):
    """Return ``(f, grad, Ft)`` with ``f = 0.5*|Ft|^2`` and ``grad = J^T Ft``."""
    Ft = residual_smooth(A, B, q, p, x)
    grad = A.T @ Ft + abs_slope(p, x) * (B.T @ Ft)
    return 0.5 * float(Ft @ Ft), grad, Ft


def wolfe_search(A, B, q, p, x, s, f0, slope, rho, sigma, max_trials, max_step):
    """Bracketing search for a step satisfying both Wolfe inequalities.

    ``slope`` is ``<d, s>`` with ``d = -grad f(x)``; it must be positive.
    Returns ``(gamma, trials, f, grad, Ft)`` at the accepted point, or
    ``(0.0, trials, None, None, None)`` when no step was accepted.
    """
    lo, hi, gamma = 0.0, np.inf, 1.0
    for trial in range(1, max_trials + 1):
        f, g, Ft = merit_grad(A, B, q, p, x + gamma * s)
        if not f <= f0 - gamma * rho * slope:
            hi = gamma
        elif float(g @ s) < -sigma * slope:
            lo = gamma
            if hi == np.inf:
                if gamma >= max_step:
                    return 0.0, trial, None, None, None
                gamma = min(2.0 * gamma, max_step)
                continue
        else:
            return gamma, trial, f, g, Ft
        gamma = 0.5 * (lo + hi)
    return 0.0, max_trials, None, None, None


def enumerate_supports(M, q, tol, pivot_tol):
    """Solve every principal subsystem and keep the complementary ones.

    Returns a list of ``(mask, z)`` where bit ``i`` of ``mask`` marks index
    ``i`` as part of the support.  Subsystems whose LU factorization has a
    pivot below ``pivot_tol`` times the block's largest entry are skipped.
    """
    n = q.shape[0]
    found = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        for size in range(n + 1):
            for support in combinations(range(n), size):
                idx = list(support)
                z = np.zeros(n)
                if idx:
                    block = M[np.ix_(idx, idx)]
                    scale = np.abs(block).max()
                    if scale == 0.0:
                        continue
                    lu, piv = scipy.linalg.lu_factor(block, check_finite=False)
                    if np.abs(np.diag(lu)).min() <= pivot_tol * scale:
                        continue
                    z[idx] = scipy.linalg.lu_solve((lu, piv), -q[idx], check_finite=False)
                    if z[idx].min() < -tol:
                        continue
                w = M @ z + q
                mask = sum(1 << i for i in idx)
                off = np.ones(n, dtype=bool)
                off[idx] = False
                if off.any() and w[off].min() < -tol:
                    continue
                found.append((mask, z))
    return found
