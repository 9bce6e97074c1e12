"""Brute-force LCP solutions by enumerating complementary supports.

For every subset ``B`` of indices, solve ``M_BB z_B = -q_B`` with ``z`` zero
off ``B``, then keep ``z`` if it is nonnegative and ``w = Mz + q`` is
nonnegative off ``B``.  Exponential in ``n``; meant as ground truth for small
problems.  Singular principal blocks are skipped, so solution continua are
not reported.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .model import LcpProblem

__all__ = ["MAX_DIMENSION", "OracleSolution", "enumerate_solutions"]

MAX_DIMENSION = 20


@dataclass(frozen=True)
class OracleSolution:
    z: np.ndarray
    basis: frozenset


def enumerate_solutions(problem: LcpProblem, tol: float = 1e-10, pivot_tol: float = 1e-12) -> list[OracleSolution]:
    """Every isolated solution of ``LCP(M, q)``.

    Solutions are returned by increasing support size; two candidates whose
    ``z`` agree within ``tol`` in the inf-norm are merged, keeping the first.
    Basis indices are 0-based.
    """
    n = problem.n
    if n > MAX_DIMENSION:
        raise ValueError(f"enumeration is limited to n <= {MAX_DIMENSION}, got n = {n}")
    found = kernels.enumerate_supports(problem.M, problem.q, tol, pivot_tol)
    found.sort(key=lambda item: (bin(item[0]).count("1"), item[0]))
    out = []
    for mask, z in found:
        if any(np.abs(z - sol.z).max() <= tol for sol in out):
            continue
        z.setflags(write=False)
        out.append(OracleSolution(z=z, basis=frozenset(i for i in range(n) if mask >> i & 1)))
    return out
