"""JSON problem files.

Schema::

    {"n": int, "M": [[float; n]; n], "q": [float; n], "x0"?: [float; n], "name"?: str}
"""

from __future__ import annotations

import json
import math
import numbers
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .model import LcpProblem

__all__ = ["ProblemFileError", "ProblemFile", "parse_problem", "load_problem", "dump_problem", "random_spd_problem"]


class ProblemFileError(ValueError):
    pass


@dataclass(frozen=True)
class ProblemFile:
    n: int
    M: list
    q: list
    x0: Optional[list] = None
    name: Optional[str] = None

    def to_problem(self) -> LcpProblem:
        return LcpProblem(self.M, self.q, self.name or "")


def _number(value, where):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise ProblemFileError(f"{where}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ProblemFileError(f"{where}: non-finite entry {value!r}")
    return value


def _vector(value, n, where):
    if not isinstance(value, list):
        raise ProblemFileError(f"{where}: expected an array of {n} numbers")
    if len(value) != n:
        raise ProblemFileError(f"{where}: expected {n} entries, got {len(value)}")
    return [_number(v, f"{where}[{i}]") for i, v in enumerate(value)]


def parse_problem(text: str) -> ProblemFile:
    """Parse and validate a problem document.

    Raises
    ------
    ProblemFileError
        With line/column context for malformed JSON and field context
        (e.g. ``M[1]``) for shape or type errors.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ProblemFileError("top level: expected a JSON object")
    for key in ("n", "M", "q"):
        if key not in doc:
            raise ProblemFileError(f"missing required field {key!r}")
    unknown = set(doc) - {"n", "M", "q", "x0", "name"}
    if unknown:
        raise ProblemFileError(f"unknown field(s): {', '.join(sorted(unknown))}")

    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ProblemFileError(f"n: expected a positive integer, got {n!r}")
    M = doc["M"]
    if not isinstance(M, list) or len(M) != n:
        got = len(M) if isinstance(M, list) else type(M).__name__
        raise ProblemFileError(f"M: expected {n} rows, got {got}")
    M = [_vector(row, n, f"M[{i}]") for i, row in enumerate(M)]
    q = _vector(doc["q"], n, "q")
    x0 = _vector(doc["x0"], n, "x0") if doc.get("x0") is not None else None
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ProblemFileError(f"name: expected a string, got {name!r}")
    return ProblemFile(n=n, M=M, q=q, x0=x0, name=name)


def load_problem(path) -> ProblemFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemFileError(f"{path}: {exc.strerror or exc}") from None
    return parse_problem(text)


def dump_problem(pf: ProblemFile) -> str:
    doc = {"n": pf.n, "M": pf.M, "q": pf.q}
    if pf.x0 is not None:
        doc["x0"] = pf.x0
    if pf.name is not None:
        doc["name"] = pf.name
    return json.dumps(doc, indent=2) + "\n"


def random_spd_problem(n: int, rng: np.random.Generator, name=None) -> ProblemFile:
    """``M = A^T A + I`` with standard normal ``A`` and ``q``; always a P-matrix."""
    A = rng.standard_normal((n, n))
    M = A.T @ A + np.eye(n)
    q = rng.standard_normal(n)
    return ProblemFile(n=n, M=M.tolist(), q=q.tolist(), name=name)
