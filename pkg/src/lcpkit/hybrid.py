"""Hybrid steepest-descent / vector-division secant solver for F~(p, x) = 0.

Each iteration minimises the merit ``f(p, x) = 0.5 ||F~(p, x)||^2`` along a
direction ``s`` built from three candidates:

* ``d = -J^T F~``, the steepest-descent direction of the merit;
* ``u = xi1 * F~(x_k)`` with ``xi1 = -|dx|^2 / <dx, dF>``;
* ``v = xi2 * dx`` with ``xi2 = -<dF, F~(x_k)> / |dF|^2``,

where ``dx = x_k - x_{k-1}`` and ``dF = F~(x_k) - F~(x_{k-1})``.  The
direction is the point on the line through ``v`` and ``u`` whose angle with
``d`` is smallest; every ``kstar``-th iteration uses ``d`` outright.  The
step length satisfies the two Wolfe inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ._backend import kernels
from .model import LcpProblem, residuals
from .records import DirectionKind, IterationRecord, SolveReport, SolverConfig, Status
from .smoothing import check_p, eval_F_tilde, merit_gradient

__all__ = [
    "LineSearchFailed",
    "StepInfo",
    "descent_direction",
    "secant_pair",
    "secant_directions",
    "blend_direction",
    "cosine",
    "line_search",
    "default_second_point",
    "solve",
]


class LineSearchFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class StepInfo:
    """Everything that went into one update; passed to ``solve``'s callback."""

    k: int
    x: np.ndarray
    d: np.ndarray
    u: Optional[np.ndarray]
    v: Optional[np.ndarray]
    s: np.ndarray
    kind: DirectionKind
    step_length: float
    ls_trials: int


def descent_direction(problem: LcpProblem, p, x) -> np.ndarray:
    return -merit_gradient(problem, p, x)


def secant_pair(dx, dF, Fk, floor=1e-300):
    """Vector-division directions from raw differences.

    Returns ``(u, v)``, or None when ``dx`` is zero or a denominator is
    below ``floor * (1 + |Fk|^2)`` in magnitude.
    """
    dx = np.asarray(dx, dtype=float)
    dF = np.asarray(dF, dtype=float)
    Fk = np.asarray(Fk, dtype=float)
    if not dx.any():
        return None
    guard = floor * (1.0 + float(Fk @ Fk))
    den1 = float(dx @ dF)
    den2 = float(dF @ dF)
    if abs(den1) <= guard or den2 <= guard:
        return None
    xi1 = -float(dx @ dx) / den1
    xi2 = -float(dF @ Fk) / den2
    return xi1 * Fk, xi2 * dx


def secant_directions(problem: LcpProblem, p, x_k, x_km1, floor=1e-300):
    Fk = eval_F_tilde(problem, p, x_k)
    Fkm1 = eval_F_tilde(problem, p, x_km1)
    return secant_pair(np.asarray(x_k, float) - np.asarray(x_km1, float), Fk - Fkm1, Fk, floor)


def cosine(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    sa, sb = np.abs(a).max(initial=0.0), np.abs(b).max(initial=0.0)
    if sa == 0 or sb == 0:
        return 0.0
    # rescale first so huge or tiny vectors do not overflow the norms
    a, b = a / sa, b / sb
    return float(a @ b) / float(np.linalg.norm(a) * np.linalg.norm(b))


def _unit(x):
    scale = np.abs(x).max()
    if scale == 0:
        return None
    x = x / scale
    return x / np.linalg.norm(x)


def blend_direction(u, v, d):
    """Pick ``s = alpha*u + (1-alpha)*v`` maximising ``cos(s, d)``.

    With ``a = <v, d>``, ``b = <w, d>`` and ``w = u - v``, the cosine along
    the line has one stationary point,

        alpha = (<v,w> a - |v|^2 b) / (<v,w> b - |w|^2 a),

    where ``s`` is parallel to the projection of ``d`` onto ``span{v, w}``.
    It is accepted only if ``<s, d> > 0`` (for ``b > 0`` this is the
    condition ``alpha > -a/b``); otherwise ``s = d``, whose cosine is the
    supremum.  When ``b == 0`` the midpoint ``(u + v)/2`` is used if ``a > 0``
    and ``d`` if not.  An optimum more than ``1e12`` times farther out than
    ``u`` and ``v`` also falls back to ``d``.

    ``s`` is formed from the projection itself rather than from ``alpha``:
    when ``u`` and ``v`` nearly coincide ``alpha`` is huge and
    ``alpha*u + (1-alpha)*v`` cancels catastrophically.

    Returns ``(s, kind)``.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    d = np.asarray(d, dtype=float)
    w = u - v
    a = float(v @ d)
    b = float(w @ d)
    if b == 0.0:
        if a > 0.0:
            return 0.5 * (u + v), DirectionKind.MIDPOINT
        return d, DirectionKind.FALLBACK_DESCENT
    w_hat = _unit(w)
    # anchor the line at whichever of u, v is shorter: a short optimum built
    # from a long anchor would cancel
    p0 = u if np.abs(u).max() < np.abs(v).max() else v
    p_perp = p0 - (p0 @ w_hat) * w_hat
    p_perp -= (p_perp @ w_hat) * w_hat
    e = _unit(p_perp)
    # a line through (or numerically through) the origin has no interior optimum
    if e is None or not np.abs(p_perp).max() > 1e-12 * np.abs(p0).max():
        return d, DirectionKind.FALLBACK_DESCENT
    h = float(p_perp @ e)
    de = float(d @ e)
    if not de > 0.0:
        return d, DirectionKind.FALLBACK_DESCENT
    # the point of the line along the projection: its part normal to w is p_perp
    t = h * (float(d @ w_hat) / de)
    # a far-away optimum means the supremum is effectively at infinity
    if not abs(t) <= 1e12 * max(np.abs(u).max(), np.abs(v).max()):
        return d, DirectionKind.FALLBACK_DESCENT
    s = p_perp + t * w_hat
    if float(s @ d) > 0.0:
        return s, DirectionKind.BLEND
    return d, DirectionKind.FALLBACK_DESCENT


def _search(problem, p, x, s, slope, f0, config):
    return kernels.wolfe_search(
        problem.A, problem.B, problem.q, p, x, s, f0, slope,
        config.rho, config.sigma, config.ls_max_trials, config.max_step,
    )


def line_search(problem: LcpProblem, p, x, s, d, config: SolverConfig | None = None) -> float:
    """Step length ``gamma`` along ``s`` satisfying

        f(x + gamma s) <= f(x) - gamma * rho * <d, s>
        <grad f(x + gamma s), s> >= -sigma * <d, s>

    Starting from 1, the step doubles while only the curvature test fails and
    is bisected once a too-long step has been seen.

    Raises
    ------
    LineSearchFailed
        If no admissible step is found within ``config.ls_max_trials``
        evaluations.
    """
    config = config or SolverConfig()
    p = check_p(p)
    x = problem.check_vector(x)
    s = problem.check_vector(s, "s")
    d = problem.check_vector(d, "d")
    slope = float(d @ s)
    if not slope > 0:
        raise ValueError("s must be a descent direction: <d, s> > 0 required")
    Ft = eval_F_tilde(problem, p, x)
    gamma, trials, *_ = _search(problem, p, x, s, slope, 0.5 * float(Ft @ Ft), config)
    if gamma == 0.0:
        raise LineSearchFailed(f"no admissible step after {trials} trials")
    return gamma


def default_second_point(problem: LcpProblem, p, x0) -> np.ndarray:
    """``x0 + 1e-3 * d(x0) / max(1, |d(x0)|)``."""
    d = descent_direction(problem, p, x0)
    return x0 + 1e-3 * d / max(1.0, float(np.linalg.norm(d)))


def solve(
    problem: LcpProblem,
    x0=None,
    x1=None,
    config: SolverConfig | None = None,
    callback: Callable[[StepInfo], None] | None = None,
) -> SolveReport:
    """Solve ``F(x) = 0`` (equivalently the LCP) from the pair ``x0, x1``.

    Terminates when ``||F(x_k)||_inf <= eps`` on the nonsmooth residual.
    Records start at ``k = 1`` with ``x1``.  If a line search fails along a
    blended direction it is retried along ``d``; a second failure ends the run
    with status ``LineSearchFailed``, as does a vanishing merit gradient away
    from a root.
    """
    config = config or SolverConfig()
    p = config.p
    A, B, q = problem.A, problem.B, problem.q
    x_prev = problem.check_vector(np.zeros(problem.n) if x0 is None else x0, "x0").copy()
    if x1 is None:
        x = default_second_point(problem, p, x_prev)
    else:
        x = problem.check_vector(x1, "x1").copy()

    Ft_prev = kernels.residual_smooth(A, B, q, p, x_prev)
    f, g, Ft = kernels.merit_grad(A, B, q, p, x)
    records = []
    notes = []
    k = 1
    while True:
        res = float(np.abs(kernels.residual_true(A, B, q, x)).max())
        z = np.abs(x) + x
        if res <= config.eps:
            status = Status.CONVERGED
            records.append(IterationRecord(k, x, z, f, res))
            break
        if k > config.max_iters:
            status = Status.MAX_ITERS
            records.append(IterationRecord(k, x, z, f, res))
            break
        d = -g
        if not d.any():
            status = Status.LINE_SEARCH_FAILED
            notes.append(f"merit gradient vanished at k={k} with ||F||_inf={res:.3e}")
            records.append(IterationRecord(k, x, z, f, res))
            break

        u = v = None
        if k % config.kstar == 0:
            s, kind = d, DirectionKind.STEEPEST_DESCENT
        else:
            pair = secant_pair(x - x_prev, Ft - Ft_prev, Ft, config.secant_floor)
            if pair is None:
                s, kind = d, DirectionKind.FALLBACK_DESCENT
            else:
                u, v = pair
                s, kind = blend_direction(u, v, d)

        gamma, trials, f_new, g_new, Ft_new = _search(problem, p, x, s, float(d @ s), f, config)
        if gamma == 0.0 and s is not d:
            notes.append(f"line search failed along {kind.value} at k={k}; retried along d")
            s, kind = d, DirectionKind.FALLBACK_DESCENT
            gamma, more, f_new, g_new, Ft_new = _search(problem, p, x, s, float(d @ d), f, config)
            trials += more
        if gamma == 0.0:
            status = Status.LINE_SEARCH_FAILED
            notes.append(f"line search failed along d at k={k}")
            records.append(IterationRecord(k, x, z, f, res, kind))
            break

        records.append(IterationRecord(k, x, z, f, res, kind, gamma))
        if callback is not None:
            callback(StepInfo(k, x, d, u, v, s, kind, gamma, trials))
        x_prev, Ft_prev = x, Ft
        x = x + gamma * s
        f, g, Ft = f_new, g_new, Ft_new
        k += 1

    return SolveReport(
        method="hybrid",
        status=status,
        records=records,
        final_residuals=residuals(problem, records[-1].z),
        notes=notes,
    )
