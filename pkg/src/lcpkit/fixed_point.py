"""Fixed-point baseline: ``x <- (I+M)^{-1} (I-M) |x| - (I+M)^{-1} q``.

Writing ``D = (I+M)^{-1}(I-M)``, the map is a contraction in the 2-norm
whenever ``||D||_2 < 1``, which holds for symmetric positive definite ``M``.
``D`` is only ever applied through the LU factors of ``I + M``.
"""

from __future__ import annotations

import warnings

import numpy as np
import scipy.linalg

from .model import LcpProblem, residuals
from .records import IterationRecord, SolveReport, SolverConfig, Status
from .smoothing import eval_F

__all__ = [
    "SingularMatrixError",
    "PowerIterationError",
    "NonContractiveWarning",
    "IterationMatrixFactorization",
    "factorize",
    "step",
    "spectral_radius_estimate",
    "solve",
]


class SingularMatrixError(np.linalg.LinAlgError):
    pass


class PowerIterationError(RuntimeError):
    def __init__(self, message, estimate):
        super().__init__(message)
        self.estimate = estimate


class NonContractiveWarning(UserWarning):
    pass


class IterationMatrixFactorization:
    """LU factors of ``I + M`` plus the cached vector ``c = (I+M)^{-1} q``.

    ``solve_count`` counts every triangular solve pair performed, which lets
    tests confirm the iteration never forms an inverse.
    """

    def __init__(self, problem: LcpProblem):
        self.problem = problem
        A = problem.A
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            self._lu = scipy.linalg.lu_factor(A)
        pivots = np.abs(np.diag(self._lu[0]))
        scale = np.abs(A).max()
        if scale == 0 or pivots.min() <= problem.n * np.finfo(float).eps * scale:
            raise SingularMatrixError("I + M is numerically singular; the fixed-point map is undefined")
        self.solve_count = 0
        self.c = self.solve(problem.q)

    def solve(self, b, trans=False):
        self.solve_count += 1
        return scipy.linalg.lu_solve(self._lu, b, trans=1 if trans else 0, check_finite=False)

    def apply_D(self, v):
        return self.solve(-(self.problem.B @ v))

    def apply_Dt(self, v):
        # D^T = (I - M)^T (I + M)^{-T}
        return -(self.problem.B.T @ self.solve(v, trans=True))

    def matrix_D(self) -> np.ndarray:
        return self.solve(-self.problem.B)


def factorize(problem: LcpProblem) -> IterationMatrixFactorization:
    return IterationMatrixFactorization(problem)


def step(fact: IterationMatrixFactorization, x) -> np.ndarray:
    """One application of the fixed-point map."""
    x = fact.problem.check_vector(x)
    return fact.apply_D(np.abs(x)) - fact.c


def _start_vector(n):
    v = np.ones(n) + 0.5 * np.sin(1.7 * np.arange(1, n + 1))
    return v / np.linalg.norm(v)


def spectral_radius_estimate(fact: IterationMatrixFactorization, tol=1e-12, max_iter=10_000) -> float:
    """Estimate ``||D||_2`` by power iteration on ``D^T D``.

    For symmetric positive definite ``M`` this equals the spectral radius of
    ``D``; a value below 1 certifies the fixed-point map is a contraction.

    Raises
    ------
    PowerIterationError
        If the Rayleigh quotient has not settled to relative change ``tol``
        after ``max_iter`` products.  The best estimate is attached.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    v = _start_vector(fact.problem.n)
    lam_prev = None
    lam = 0.0
    for _ in range(max_iter):
        w = fact.apply_Dt(fact.apply_D(v))
        lam = float(v @ w)
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        if lam_prev is not None and abs(lam - lam_prev) <= tol * lam:
            return float(np.sqrt(lam))
        v = w / norm
        lam_prev = lam
    raise PowerIterationError(
        f"power iteration did not converge in {max_iter} steps", float(np.sqrt(max(lam, 0.0)))
    )


def solve(problem: LcpProblem, x0=None, config: SolverConfig | None = None, certify=True) -> SolveReport:
    """Run the fixed-point iteration until ``||F(x)||_inf <= config.eps``.

    Records are indexed by the number of updates so far (``k = 0`` is ``x0``).
    With ``certify`` the contraction estimate is computed first and a
    :class:`NonContractiveWarning` is issued when it is not below 1; the
    iteration runs regardless.
    """
    config = config or SolverConfig()
    fact = factorize(problem)
    x = problem.check_vector(np.zeros(problem.n) if x0 is None else x0, "x0").copy()

    estimate = None
    notes = []
    if certify:
        try:
            estimate = spectral_radius_estimate(fact)
        except PowerIterationError as exc:
            estimate = exc.estimate
            notes.append(f"contraction estimate unconverged: {exc}")
        if estimate >= 1.0:
            notes.append(f"non-contractive: ||D||_2 ~ {estimate:.6g}")
            warnings.warn(
                f"||D||_2 ~ {estimate:.6g} >= 1; fixed-point convergence is not guaranteed",
                NonContractiveWarning,
                stacklevel=2,
            )

    records = []
    k = 0
    while True:
        F = eval_F(problem, x)
        res = float(np.abs(F).max())
        records.append(IterationRecord(k=k, x=x, z=np.abs(x) + x, merit=0.5 * float(F @ F), residual_F_inf=res))
        if res <= config.eps:
            status = Status.CONVERGED
            break
        if k >= config.max_iters:
            status = Status.MAX_ITERS
            break
        x = step(fact, x)
        k += 1

    return SolveReport(
        method="fixed-point",
        status=status,
        records=records,
        final_residuals=residuals(problem, records[-1].z),
        contraction_estimate=estimate,
        notes=notes,
    )
