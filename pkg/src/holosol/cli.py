"""holosol command line: solve, dim, bfun, resolve, encode."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import linalg
from .bfunction import BFunctionError, compute_b
from .groebner import GroebnerError
from .parsing import ParseError, ProblemError, dump_complex, read_problem
from .resolution import ResolutionError, build_resolution, is_complex
from .solver import SolverError, select_slice, solve_ext, window_lower
from .weyl import format_rational

USER_ERROR = 1
COMPUTATION_ERROR = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _q(c) -> str:
    return format_rational(Fraction(c))


def _emit(obj, fmt: str, text: str, out) -> None:
    if fmt == "structured":
        out.write(json.dumps(obj, indent=2) + "\n")
    else:
        out.write(text if text.endswith("\n") else text + "\n")


def _meta(basis) -> dict:
    return {
        "dimension": basis.dimension,
        "k0": basis.k0,
        "k1": basis.k1,
        "b_function": str(basis.bfunction) if basis.bfunction is not None else None,
    }


def _bfunction_of(problem, prefer_supplied=True):
    if prefer_supplied and problem.bfunction is not None:
        return problem.bfunction
    if problem.generators is not None:
        return compute_b(problem.generators, problem.weight, problem.tiebreak)
    return compute_b([tuple(r) for r in problem.complex.psi(1)], problem.weight,
                     problem.tiebreak)


def cmd_solve(problem, args, out, dimension_only=False):
    order = args.order
    if dimension_only and order is None and problem.order is None:
        order = 0  # the dimension does not depend on the output order
    spec = problem.to_spec(args.degree, order)
    basis = solve_ext(spec, extend=not dimension_only)
    meta = _meta(basis)
    meta["degree"] = spec.degree
    if dimension_only:
        text = "\n".join(f"{k}: {'none' if v is None else v}" for k, v in meta.items())
        _emit(meta, args.format, text, out)
        return
    meta["order"] = spec.order
    names = list(problem.names)
    solutions = []
    lines = [f"{k}: {'none' if v is None else v}" for k, v in meta.items()]
    for i, sol in enumerate(basis.solutions, start=1):
        records = [{"component": r["component"], "exponent": r["exponent"],
                    "derivative_coord": _q(r["derivative_coord"]),
                    "monomial_coeff": _q(r["monomial_coeff"])}
                   for r in sol.records()]
        solutions.append(records)
        lines.append(f"solution {i}: {sol.format(names)}")
    _emit({"metadata": meta, "solutions": solutions}, args.format, "\n".join(lines), out)


def cmd_bfun(problem, args, out):
    b = _bfunction_of(problem, prefer_supplied=False)
    roots = b.integral_roots
    obj = {"b_function": str(b), "coefficients": [_q(c) for c in b.coeffs],
           "integral_roots": roots, "k0": b.k0, "k1": b.k1}
    text = "\n".join([f"b(s) = {b}",
                      "integral roots: " + (" ".join(str(r) for r in roots) or "none"),
                      f"k0: {'none' if b.k0 is None else b.k0}",
                      f"k1: {'none' if b.k1 is None else b.k1}"])
    _emit(obj, args.format, text, out)


def cmd_resolve(problem, args, out):
    if problem.generators is None:
        raise ProblemError("resolve needs 'generators' in the problem file")
    length = args.level if args.level is not None else problem.n + 1
    if length < 1:
        raise ProblemError("--level must be at least 1")
    cx = build_resolution(problem.generators, problem.weight, length, problem.tiebreak)
    names = list(problem.names)
    if args.format == "structured":
        obj = {"ranks": cx.ranks(), "shifts": [list(s) for s in cx.shifts],
               "maps": [[[op.format(names) for op in row] for row in m] for m in cx.maps],
               "is_complex": is_complex(cx)}
        _emit(obj, args.format, "", out)
    else:
        out.write(dump_complex(cx, names))


def _matrix_obj(M) -> dict:
    return {"shape": list(M.shape), "rows": M.rows.labels(), "cols": M.cols.labels(),
            "entries": [[_q(x) for x in r] for r in M.entries]}


def _matrix_text(title: str, M) -> str:
    lines = [f"{title}: {M.shape[0]} x {M.shape[1]}",
             "rows: " + json.dumps(M.rows.labels(), separators=(",", ":")),
             "cols: " + json.dumps(M.cols.labels(), separators=(",", ":"))]
    lines += [" ".join(_q(x) for x in r) for r in M.entries]
    return "\n".join(lines)


def cmd_encode(problem, args, out):
    spec = problem.to_spec(args.degree, args.order if args.order is not None else 0)
    m = args.level
    if m is None:
        raise ProblemError("encode needs --level")
    if problem.complex is not None:
        cx = problem.complex
    else:
        cx = build_resolution(problem.generators, problem.weight, spec.degree + 1,
                              problem.tiebreak)
    if spec.window_lo is not None:
        lo = spec.window_lo
    else:
        lo = window_lower(_bfunction_of(problem).k0)
    if m < lo:
        raise ProblemError(f"level {m} is below the window start {lo}")
    sl = select_slice(cx, spec.degree)
    if sl is None:
        raise ProblemError(f"degree {spec.degree} exceeds the resolution length {cx.length}")
    A, B = sl.matrices(lo, m)
    obj = {"degree": spec.degree, "level": m, "window": [lo, m],
           "A": _matrix_obj(A), "B": _matrix_obj(B)}
    text = "\n\n".join([_matrix_text(f"tau_{m}(A^T)", A), _matrix_text(f"tau_{m}(B^T)", B)])
    _emit(obj, args.format, text, out)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="holosol", description="Bases of Ext^d(D/I, O) at the origin.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    helps = {
        "solve": "basis of Ext^d as truncated power series",
        "dim": "dimension of Ext^d",
        "bfun": "b-function and its integral roots",
        "resolve": "adapted free resolution of the input module",
        "encode": "truncated boundary matrices for inspection",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--input", required=True, help="problem file (TOML)")
        p.add_argument("--degree", type=int, help="cohomological degree d")
        p.add_argument("--order", type=int, help="series truncation order N")
        p.add_argument("--level", type=int,
                       help="truncation degree m (encode) or resolution length (resolve)")
        p.add_argument("--format", choices=("text", "structured"), default="text")
    return parser


_COMMANDS = {
    "solve": cmd_solve,
    "dim": lambda p, a, o: cmd_solve(p, a, o, dimension_only=True),
    "bfun": cmd_bfun,
    "resolve": cmd_resolve,
    "encode": cmd_encode,
}


def _error(kind: str, message: str, code: int, err) -> int:
    err.write(json.dumps({"error": {"type": kind, "message": message, "exit_code": code}}) + "\n")
    return code


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required: solve, dim, bfun, resolve or encode")
        problem = read_problem(args.input)
        _COMMANDS[args.command](problem, args, out)
    except UsageError as exc:
        return _error("usage", str(exc), USER_ERROR, err)
    except OSError as exc:
        return _error("io", str(exc), USER_ERROR, err)
    except (ParseError, ProblemError) as exc:
        return _error(type(exc).__name__, str(exc), USER_ERROR, err)
    except (SolverError, BFunctionError, GroebnerError, ResolutionError,
            linalg.InconsistentSystemError) as exc:
        return _error(type(exc).__name__, str(exc), COMPUTATION_ERROR, err)
    except ValueError as exc:
        return _error("ValueError", str(exc), USER_ERROR, err)
    except (RuntimeError, ArithmeticError, RecursionError) as exc:
        return _error(type(exc).__name__, str(exc), COMPUTATION_ERROR, err)
    return 0


if __name__ == "__main__":
    sys.exit(main())
