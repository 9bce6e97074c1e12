"""LCP problem data, the x <-> (z, w) change of variables, and residuals.

An LCP(M, q) asks for ``z >= 0`` with ``w = M z + q >= 0`` and ``z.w = 0``.
The solvers work with a single unknown ``x`` related to the pair by
``z = |x| + x`` and ``w = |x| - x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "LcpProblem",
    "ResidualMetrics",
    "new_problem",
    "x_to_zw",
    "zw_to_x",
    "residuals",
]


def _frozen(a):
    a = np.array(a, dtype=float, order="C")
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class LcpProblem:
    """Dense LCP data.  Arrays are copied and made read-only."""

    M: np.ndarray
    q: np.ndarray
    name: str = ""

    def __post_init__(self):
        try:
            M = _frozen(self.M)
            q = _frozen(self.q)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"problem data is not numeric: {exc}") from None
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError(f"M must be square, got shape {M.shape}")
        if q.ndim != 1:
            raise ValueError(f"q must be a vector, got shape {q.shape}")
        if M.shape[0] != q.shape[0]:
            raise ValueError(f"dimension mismatch: M is {M.shape[0]}x{M.shape[1]}, q has length {q.shape[0]}")
        if q.shape[0] == 0:
            raise ValueError("problem dimension must be positive")
        if not (np.isfinite(M).all() and np.isfinite(q).all()):
            raise ValueError("M and q must have finite entries")
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "q", q)

    @property
    def n(self) -> int:
        return self.q.shape[0]

    @cached_property
    def A(self) -> np.ndarray:
        """``M + I``."""
        return _frozen(self.M + np.eye(self.n))

    @cached_property
    def B(self) -> np.ndarray:
        """``M - I``."""
        return _frozen(self.M - np.eye(self.n))

    def check_vector(self, v, what="x") -> np.ndarray:
        v = np.ascontiguousarray(v, dtype=float)
        if v.shape != (self.n,):
            raise ValueError(f"{what} must have length {self.n}, got shape {v.shape}")
        return v


def new_problem(M, q, name: str = "") -> LcpProblem:
    """Validate ``M`` and ``q`` and build an :class:`LcpProblem`.

    Raises
    ------
    ValueError
        On a non-square ``M``, a length mismatch with ``q``, or any
        non-finite entry.
    """
    return LcpProblem(M, q, name)


@dataclass(frozen=True)
class ResidualMetrics:
    """How far a candidate ``z`` is from solving the LCP.

    Attributes
    ----------
    gap : float
        ``z.(Mz + q)``, unclamped.
    min_z, min_w : float
        Most negative entry of ``z`` and of ``w = Mz + q``; 0 if none is negative.
    natural_residual : float
        ``max_i |min(z_i, w_i)|``.
    """

    gap: float
    min_z: float
    min_w: float
    natural_residual: float

    def is_solution(self, tol: float = 1e-8) -> bool:
        return abs(self.gap) <= tol and self.min_z >= -tol and self.min_w >= -tol


def x_to_zw(x):
    x = np.asarray(x, dtype=float)
    a = np.abs(x)
    return a + x, a - x


def zw_to_x(z, w):
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    if z.shape != w.shape:
        raise ValueError(f"z and w differ in shape: {z.shape} vs {w.shape}")
    return (z - w) / 2


def residuals(problem: LcpProblem, z) -> ResidualMetrics:
    z = problem.check_vector(z, "z")
    w = problem.M @ z + problem.q
    return ResidualMetrics(
        gap=float(z @ w),
        min_z=float(min(z.min(), 0.0)),
        min_w=float(min(w.min(), 0.0)),
        natural_residual=float(np.abs(np.minimum(z, w)).max()),
    )
