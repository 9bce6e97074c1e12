import importlib

import numpy as np
import pytest

from lcpkit import new_problem

EX1_M = [[4, -1, 0, 0], [-1, 4, -1, 0], [0, -1, 4, -1], [0, 0, -1, 4]]
EX1_Q = [-4, 3, -4, 2]
EX1_X0 = [1.1, 0.1, 1.2, 0.2]
EX1_Z = [1.0, 0.0, 1.0, 0.0]

EX2_M = [[8, -1, 0, -5], [1, 5, -1, 0], [2, -1, 6, -1], [6, 0, -1, 7]]
EX2_Q = [1, -2, -3, 4]
EX2_X0 = [-1.0, -2.0, -3.0, -4.0]
EX2_Z = [0.0, 15 / 29, 17 / 29, 0.0]


@pytest.fixture
def ex1():
    return new_problem(EX1_M, EX1_Q, name="example-1")


@pytest.fixture
def ex2():
    return new_problem(EX2_M, EX2_Q, name="example-2")


def random_spd(rng, n):
    A = rng.standard_normal((n, n))
    return new_problem(A.T @ A + np.eye(n), rng.standard_normal(n))


def _available_backends():
    names = ["lcpkit._pykernels"]
    try:
        importlib.import_module("lcpkit._ckernels")
        names.append("lcpkit._ckernels")
    except ImportError:
        pass
    return names


@pytest.fixture(params=_available_backends(), ids=lambda name: name.rsplit("_", 1)[-1])
def kernels(request):
    return importlib.import_module(request.param)


_ACCEPTANCE = []


def record_criterion(label, passed, detail):
    _ACCEPTANCE.append((label, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}: {detail}")
