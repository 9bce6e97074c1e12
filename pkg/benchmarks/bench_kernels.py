"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--solve-problems 40]

Each row reports the best-of-``repeat`` wall time per call for both
backends and the speedup.  The end-to-end rows run whole solves through the
public API, once with each backend swapped in.
"""

import argparse
import importlib
import time
import timeit

import numpy as np

from lcpkit import SolverConfig, _backend, enumerate_solutions, hybrid, new_problem, oracle

PY = importlib.import_module("lcpkit._pykernels")
try:
    C = importlib.import_module("lcpkit._ckernels")
except ImportError:
    C = None


def best(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def spd(rng, n):
    A = rng.standard_normal((n, n))
    return new_problem(A.T @ A + np.eye(n), rng.standard_normal(n))


def kernel_cases(rng):
    for n in (4, 8, 32):
        prob = spd(rng, n)
        x = rng.standard_normal(n)
        A, B, q = prob.A, prob.B, prob.q
        f, g, _ = PY.merit_grad(A, B, q, 1e8, x)
        yield f"merit_grad n={n}", lambda k, A=A, B=B, q=q, x=x: k.merit_grad(A, B, q, 1e8, x), 2000
        args = (A, B, q, 1e8, x, -g, f, float(g @ g), 0.1, 0.9, 60, 2.0**20)
        yield f"wolfe_search n={n}", lambda k, args=args: k.wolfe_search(*args), 500
    for n in (8, 12):
        prob = spd(rng, n)
        yield f"enumerate n={n}", lambda k, M=prob.M, q=prob.q: k.enumerate_supports(M, q, 1e-10, 1e-12), 3


def with_backend(module, fn):
    saved = (_backend.kernels, hybrid.kernels, oracle.kernels)
    _backend.kernels = hybrid.kernels = oracle.kernels = module
    try:
        return fn()
    finally:
        _backend.kernels, hybrid.kernels, oracle.kernels = saved


def end_to_end(count):
    rng = np.random.default_rng(7)
    problems = [(spd(rng, int(rng.integers(2, 9))), None) for _ in range(count)]
    problems = [(p, rng.standard_normal(p.n)) for p, _ in problems]
    config = SolverConfig(max_iters=50_000)

    def run():
        t0 = time.perf_counter()
        for prob, x0 in problems:
            hybrid.solve(prob, x0, config=config)
            enumerate_solutions(prob)
        return time.perf_counter() - t0

    return run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--solve-problems", type=int, default=40)
    args = ap.parse_args()
    if C is None:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation` first")

    rng = np.random.default_rng(0)
    print(f"{'case':<22}{'python':>12}{'cython':>12}{'speedup':>9}")
    for name, call, number in kernel_cases(rng):
        tp = best(lambda: call(PY), args.repeat, number)
        tc = best(lambda: call(C), args.repeat, number)
        print(f"{name:<22}{tp * 1e6:>10.1f}us{tc * 1e6:>10.1f}us{tp / tc:>8.1f}x")

    run = end_to_end(args.solve_problems)
    tp = with_backend(PY, run)
    tc = with_backend(C, run)
    label = f"solve+oracle x{args.solve_problems}"
    print(f"{label:<22}{tp:>11.2f}s{tc:>11.2f}s{tp / tc:>8.1f}x")


if __name__ == "__main__":
    main()
