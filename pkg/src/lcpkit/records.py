"""Configuration and result types shared by both solvers."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .model import ResidualMetrics

__all__ = ["SolverConfig", "Status", "DirectionKind", "IterationRecord", "SolveReport"]


class Status(str, enum.Enum):
    CONVERGED = "Converged"
    MAX_ITERS = "MaxIters"
    LINE_SEARCH_FAILED = "LineSearchFailed"


class DirectionKind(str, enum.Enum):
    STEEPEST_DESCENT = "SteepestDescent"
    BLEND = "Blend"
    MIDPOINT = "Midpoint"
    FALLBACK_DESCENT = "FallbackDescent"


@dataclass(frozen=True)
class SolverConfig:
    """Solver constants.

    ``p`` is the smoothing sharpness, ``eps`` the tolerance on ``||F(x)||_inf``,
    ``kstar`` the steepest-descent restart period and ``rho``/``sigma`` the
    sufficient-decrease and curvature constants of the line search.
    ``secant_floor`` scales the zero-denominator guard of the secant step and
    ``max_step`` caps step-length doubling.
    """

    p: float = 1e8
    eps: float = 1e-9
    kstar: int = 6
    rho: float = 0.1
    sigma: float = 0.9
    max_iters: int = 500
    ls_max_trials: int = 60
    secant_floor: float = 1e-300
    max_step: float = 2.0**20

    def __post_init__(self):
        if not (self.p > 0 and math.isfinite(self.p)):
            raise ValueError(f"p must be positive and finite, got {self.p}")
        if not self.eps > 0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        if int(self.kstar) != self.kstar or self.kstar < 1:
            raise ValueError(f"kstar must be a positive integer, got {self.kstar}")
        if not 0 < self.rho < 0.5:
            raise ValueError(f"rho must lie in (0, 1/2), got {self.rho}")
        if not self.rho < self.sigma < 1:
            raise ValueError(f"sigma must lie in (rho, 1), got {self.sigma}")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if self.ls_max_trials < 1:
            raise ValueError("ls_max_trials must be at least 1")
        if not self.max_step >= 1:
            raise ValueError("max_step must be at least 1")


@dataclass(frozen=True)
class IterationRecord:
    """Snapshot of iterate ``k``.

    ``direction_kind`` and ``step_length`` describe the step taken *from*
    this iterate; both are None on the final record and for fixed-point runs.
    """

    k: int
    x: np.ndarray
    z: np.ndarray
    merit: float
    residual_F_inf: float
    direction_kind: Optional[DirectionKind] = None
    step_length: Optional[float] = None


@dataclass
class SolveReport:
    method: str
    status: Status
    records: list[IterationRecord]
    final_residuals: ResidualMetrics
    contraction_estimate: Optional[float] = None
    notes: list[str] = field(default_factory=list)

    @property
    def iterations(self) -> int:
        """Number of updates performed (records minus the starting iterate)."""
        return len(self.records) - 1

    @property
    def x(self) -> np.ndarray:
        return self.records[-1].x

    @property
    def z(self) -> np.ndarray:
        return self.records[-1].z

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED

    @property
    def non_contractive(self) -> bool:
        return self.contraction_estimate is not None and self.contraction_estimate >= 1.0
