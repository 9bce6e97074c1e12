"""Command-line front end.

Exit codes: 0 converged (or oracle found solutions), 2 solver gave up
(MaxIters / LineSearchFailed, or no oracle solution), 1 usage or input error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import fixed_point, hybrid
from ._backend import BACKEND
from .oracle import enumerate_solutions
from .problem_file import ProblemFileError, dump_problem, load_problem, random_spd_problem
from .records import SolveReport, SolverConfig

EXIT_OK, EXIT_ERROR, EXIT_NOT_CONVERGED = 0, 1, 2

_DEFAULTS = SolverConfig()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _vector_arg(text):
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lcpkit", description="Dense LCP solvers via the absolute-value reformulation.")
    parser.add_argument("--backend", action="store_true", help="print the active kernel backend and exit")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def solver_flags(p):
        p.add_argument("--input", required=True, metavar="PATH", help="problem file (JSON)")
        p.add_argument("--x0", type=_vector_arg, help='starting point "v1,...,vn"; overrides the file')
        p.add_argument("--p", type=float, default=_DEFAULTS.p, help="smoothing parameter")
        p.add_argument("--eps", type=float, default=_DEFAULTS.eps, help="tolerance on ||F(x)||_inf")
        p.add_argument("--kstar", type=int, default=_DEFAULTS.kstar, help="steepest-descent restart period")
        p.add_argument("--rho", type=float, default=_DEFAULTS.rho, help="sufficient-decrease constant")
        p.add_argument("--sigma", type=float, default=_DEFAULTS.sigma, help="curvature constant")
        p.add_argument("--max-iters", type=int, default=_DEFAULTS.max_iters)
        p.add_argument("--format", choices=("table", "csv", "csv-full"), default="table")

    p_solve = sub.add_parser("solve", help="run one solver and print its trace")
    p_solve.add_argument("--method", choices=("fixed-point", "hybrid"), default="hybrid")
    solver_flags(p_solve)

    p_cmp = sub.add_parser("compare", help="run both solvers from the same start")
    solver_flags(p_cmp)
    p_cmp.add_argument("--tol", type=float, default=1e-6, help="agreement tolerance on z (inf-norm)")

    p_oracle = sub.add_parser("oracle", help="enumerate all solutions by brute force")
    p_oracle.add_argument("--input", required=True, metavar="PATH")
    p_oracle.add_argument("--tol", type=float, default=1e-10)

    p_gen = sub.add_parser("gen", help="emit a random problem with M = A^T A + I")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--name")
    p_gen.add_argument("--output", metavar="PATH", help="write here instead of stdout")
    return parser


def _fmt_z(v):
    return f"{v:.7f}"


def _fmt_sci(v):
    return f"{v:.7e}"


def _row_values(rec, fmt):
    if fmt == "csv-full":
        zs = [repr(float(v)) for v in rec.z]
        tail = [repr(float(rec.merit)), repr(float(rec.residual_F_inf))]
    else:
        zs = [_fmt_z(v) for v in rec.z]
        tail = [_fmt_sci(rec.merit), _fmt_sci(rec.residual_F_inf)]
    return [str(rec.k)] + zs + tail


def format_trace(report: SolveReport, fmt: str = "table") -> list[str]:
    n = report.records[0].z.shape[0]
    header = ["k"] + [f"z{i + 1}" for i in range(n)] + ["merit", "res_inf"]
    rows = [_row_values(rec, fmt) for rec in report.records]
    if fmt != "table":
        return [",".join(header)] + [",".join(r) for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(header)]
    return ["  ".join(c.rjust(w) for c, w in zip(line, widths)) for line in [header] + rows]


def format_summary(report: SolveReport, fmt: str = "table") -> list[str]:
    rec = report.records[-1]
    zfmt = (lambda v: repr(float(v))) if fmt == "csv-full" else _fmt_z
    r = report.final_residuals
    lines = [
        f"method: {report.method}",
        f"status: {report.status.value}",
        f"iterations: {report.iterations}",
        "z = (" + ", ".join(zfmt(v) for v in rec.z) + ")",
        f"res_inf: {_fmt_sci(rec.residual_F_inf)}",
        f"residuals: gap={_fmt_sci(r.gap)} min_z={_fmt_sci(r.min_z)} "
        f"min_w={_fmt_sci(r.min_w)} natural={_fmt_sci(r.natural_residual)}",
    ]
    if report.contraction_estimate is not None:
        lines.append(f"contraction estimate ||D||_2: {report.contraction_estimate:.7f}")
    lines.extend(f"note: {note}" for note in report.notes)
    return lines


def _config(args) -> SolverConfig:
    return SolverConfig(
        p=args.p, eps=args.eps, kstar=args.kstar, rho=args.rho, sigma=args.sigma, max_iters=args.max_iters
    )


def _load(args):
    pf = load_problem(args.input)
    problem = pf.to_problem()
    x0 = args.x0 if getattr(args, "x0", None) is not None else pf.x0
    x0 = problem.check_vector(np.zeros(problem.n) if x0 is None else x0, "x0")
    return problem, x0


def _run(method, problem, x0, config):
    if method == "fixed-point":
        import warnings

        with warnings.catch_warnings():
            # the summary already carries the non-contractive note
            warnings.simplefilter("ignore", fixed_point.NonContractiveWarning)
            return fixed_point.solve(problem, x0, config)
    return hybrid.solve(problem, x0, config=config)


def _emit(report, fmt, out, err):
    for line in format_trace(report, fmt):
        print(line, file=out)
    summary_stream = out if fmt == "table" else err
    for line in format_summary(report, fmt):
        print(line, file=summary_stream)


def _cmd_solve(args, out, err):
    problem, x0 = _load(args)
    report = _run(args.method, problem, x0, _config(args))
    _emit(report, args.format, out, err)
    return EXIT_OK if report.converged else EXIT_NOT_CONVERGED


def _cmd_compare(args, out, err):
    problem, x0 = _load(args)
    config = _config(args)
    reports = [_run(m, problem, x0, config) for m in ("fixed-point", "hybrid")]
    for report in reports:
        print(f"# {report.method}", file=out)
        _emit(report, args.format, out, err)
    gap = float(np.abs(reports[0].z - reports[1].z).max())
    both = all(r.converged for r in reports)
    agree = both and gap <= args.tol
    verdict = "agree" if agree else "DISAGREE"
    status = "" if both else " (not all solvers converged)"
    print(f"verdict: {verdict} max|dz|={gap:.3e} tol={args.tol:g}{status}", file=out)
    return EXIT_OK if agree else EXIT_NOT_CONVERGED


def _cmd_oracle(args, out, err):
    problem = load_problem(args.input).to_problem()
    sols = enumerate_solutions(problem, tol=args.tol)
    for sol in sols:
        support = ",".join(str(i + 1) for i in sorted(sol.basis))
        print("z = (" + ", ".join(_fmt_z(v) for v in sol.z) + ")  support = {" + support + "}", file=out)
    if not sols:
        print("no solution found", file=err)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def _cmd_gen(args, out, err):
    if args.n < 1:
        raise ValueError("--n must be positive")
    pf = random_spd_problem(args.n, np.random.default_rng(args.seed), name=args.name)
    text = dump_problem(pf)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


_COMMANDS = {"solve": _cmd_solve, "compare": _cmd_compare, "oracle": _cmd_oracle, "gen": _cmd_gen}


def main(argv=None, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.backend:
        print(BACKEND, file=out)
        return EXIT_OK
    if args.command is None:
        parser.print_usage(err)
        return EXIT_ERROR
    try:
        return _COMMANDS[args.command](args, out, err)
    except (ProblemFileError, ValueError, np.linalg.LinAlgError) as exc:
        print(f"lcpkit: error: {exc}", file=err)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
