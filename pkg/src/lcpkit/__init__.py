"""Dense linear complementarity problem solvers.

The LCP ``z >= 0, Mz + q >= 0, z.(Mz + q) = 0`` is solved through the
equivalent root problem ``F(x) = (M+I)x + (M-I)|x| + q = 0`` with
``z = |x| + x``.  Two solvers are provided: a fixed-point iteration and a
hybrid steepest-descent / vector-division secant method on a smooth
surrogate of ``F``.  A brute-force enumerator serves as ground truth.
"""

from ._backend import BACKEND
from .model import LcpProblem, ResidualMetrics, new_problem, residuals, x_to_zw, zw_to_x
from .records import DirectionKind, IterationRecord, SolveReport, SolverConfig, Status
from .oracle import OracleSolution, enumerate_solutions
from . import fixed_point, hybrid, smoothing

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "LcpProblem",
    "ResidualMetrics",
    "new_problem",
    "residuals",
    "x_to_zw",
    "zw_to_x",
    "DirectionKind",
    "IterationRecord",
    "SolveReport",
    "SolverConfig",
    "Status",
    "OracleSolution",
    "enumerate_solutions",
    "fixed_point",
    "hybrid",
    "smoothing",
]
