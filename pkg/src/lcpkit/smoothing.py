"""The nonsmooth residual F and its C-infinity surrogate.

    F(x)      = (M + I) x + (M - I) |x| + q
    F~(p, x)  = (M + I) x + (M - I) s_p(x) + q,
    s_p(t)    = (1/p) ln(1 + e^{pt} + e^{-pt})

``s_p`` overestimates ``|t|`` by at most ``ln(3)/p``.  All exponentials are
evaluated after factoring out ``e^{p|t|}``, so nothing overflows for any
finite ``p*t``.
"""

from __future__ import annotations

import math

import numpy as np

from ._backend import kernels
from .model import LcpProblem

__all__ = [
    "DEFAULT_P",
    "check_p",
    "smooth_abs",
    "eval_F",
    "eval_F_tilde",
    "eval_E_diag",
    "eval_jacobian",
    "merit",
    "merit_gradient",
    "surrogate_bound",
]

DEFAULT_P = 1e8


def check_p(p) -> float:
    p = float(p)
    if not (p > 0 and math.isfinite(p)):
        raise ValueError(f"smoothing parameter p must be positive and finite, got {p}")
    return p


def _elementwise(fn, p, t):
    p = check_p(p)
    t = np.asarray(t, dtype=float)
    out = fn(p, np.ascontiguousarray(t.ravel())).reshape(t.shape)
    return float(out) if out.ndim == 0 else out


def smooth_abs(p, t):
    """``(1/p) ln(1 + e^{pt} + e^{-pt})``, elementwise.

    Computed as ``|t| + log1p(e^{-p|t|} + e^{-2p|t|}) / p``; the result lies
    in ``[|t|, |t| + ln(3)/p]``.
    """
    return _elementwise(kernels.smooth_abs, p, t)


def eval_E_diag(p, x):
    """Derivative of :func:`smooth_abs` in ``t``, elementwise.

    Equals ``(e^{pt} - e^{-pt}) / (1 + e^{pt} + e^{-pt})``; odd in ``t`` and
    strictly inside ``(-1, 1)``.
    """
    return _elementwise(kernels.abs_slope, p, x)


def eval_F(problem: LcpProblem, x) -> np.ndarray:
    x = problem.check_vector(x)
    return kernels.residual_true(problem.A, problem.B, problem.q, x)


def eval_F_tilde(problem: LcpProblem, p, x) -> np.ndarray:
    x = problem.check_vector(x)
    return kernels.residual_smooth(problem.A, problem.B, problem.q, check_p(p), x)


def eval_jacobian(problem: LcpProblem, p, x) -> np.ndarray:
    """``J(p, x) = (M + I) + (M - I) diag(E(p, x))``."""
    x = problem.check_vector(x)
    return problem.A + problem.B * eval_E_diag(p, x)[None, :]


def merit(problem: LcpProblem, p, x) -> float:
    """``f(p, x) = 0.5 * ||F~(p, x)||^2``."""
    Ft = eval_F_tilde(problem, p, x)
    return 0.5 * float(Ft @ Ft)


def merit_gradient(problem: LcpProblem, p, x) -> np.ndarray:
    """``J(p, x)^T F~(p, x)``."""
    x = problem.check_vector(x)
    return kernels.merit_grad(problem.A, problem.B, problem.q, check_p(p), x)[1]


def surrogate_bound(problem: LcpProblem, p) -> float:
    """Uniform bound ``||M - I||_inf * ln(3)/p`` on ``||F~(p, .) - F||_inf``."""
    return float(np.abs(problem.B).sum(axis=1).max()) * math.log(3.0) / check_p(p)
