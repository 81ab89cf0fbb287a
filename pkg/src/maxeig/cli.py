"""Command-line interface.

Three subcommands: ``solve`` runs one engine on a matrix file and prints
the trace, ``table`` regenerates one of the published benchmark tables as
CSV, ``gen`` writes a model generator to a matrix file.

Exit codes: 0 converged, 1 unreadable/ill-formed input or bad parameters,
2 iteration cap reached, 3 numeric failure.  Diagnostics go to stderr;
results go to stdout.
"""

import argparse
import csv
import json
import sys

import numpy as np

from .checks import shift_a_to_q
from .engines import IterationConfig, rqi_nonneg, rqi_q, sii_complex, sii_nonneg, sii_q
from .errors import MatrixFileError, MaxeigError
from .matrixio import load_matrix, save_matrix
from .models import BranchingSpec, SingleBirthSpec, branching_q, single_birth_q
from .tables import generate_table
from .tridiag import TridiagonalQ, tridiag_pipeline, tridiagonal_from_dense

ALGORITHMS = ("rqi", "sii", "rqi-q", "sii-q", "complex", "tri17a", "tri17b")

EXIT_OK = 0
EXIT_BAD_INPUT = 1
EXIT_MAX_ITER = 2
EXIT_NUMERIC = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on usage errors; reserve 2 for the
    iteration cap and report usage problems as input errors instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_INPUT)


def build_parser():
    parser = _Parser(prog="maxeig", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run one engine on a matrix file")
    solve.add_argument("--input", required=True, help="matrix file (JSON)")
    solve.add_argument("--algorithm", required=True, choices=ALGORITHMS)
    solve.add_argument("--tol", type=float, default=1e-6)
    solve.add_argument("--max-iter", type=int, default=100)
    solve.add_argument("--xi", type=float, default=None,
                       help="convex initial-shift weight (sii-q only)")
    solve.add_argument("--format", choices=("json", "csv"), default="json")

    table = sub.add_parser("table", help="regenerate a benchmark table as CSV")
    table.add_argument("--id", type=int, required=True, help="table number 1..10")
    table.add_argument("--max-n", type=int, default=1000,
                       help="cap on the model sizes of the scans")

    gen = sub.add_parser("gen", help="write a model generator to a matrix file")
    gen.add_argument("--model", required=True, choices=("single-birth", "branching"))
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--a-rule", default="reciprocal",
                     choices=("reciprocal", "one", "linear", "quadratic"))
    gen.add_argument("--alpha", type=float, default=None)
    gen.add_argument("--out", required=True)
    return parser


def _run_solve(args):
    matrix = load_matrix(args.input)
    sii_strategy = "convex" if args.xi is not None else None
    cfg = IterationConfig(
        tol=args.tol,
        max_iter=args.max_iter,
        shift_strategy=sii_strategy if args.algorithm == "sii-q" else None,
        xi=args.xi if args.xi is not None else 0.69,
    )
    if args.xi is not None and args.algorithm != "sii-q":
        raise ValueError("--xi applies to the sii-q engine only")

    if args.algorithm.startswith("tri17"):
        return _run_tridiagonal(args, matrix, cfg)

    if isinstance(matrix, TridiagonalQ):
        matrix = matrix.to_dense()
    engines = {
        "rqi": rqi_nonneg,
        "sii": sii_nonneg,
        "rqi-q": rqi_q,
        "sii-q": sii_q,
        "complex": sii_complex,
    }
    pair = engines[args.algorithm](matrix, cfg)
    _emit_trace(args, pair, extra={})
    return _exit_code(pair.trace.stop_reason)


def _run_tridiagonal(args, matrix, cfg):
    variant = args.algorithm[-1]
    if isinstance(matrix, TridiagonalQ):
        tq, m = matrix, 0.0
    else:
        if np.iscomplexobj(matrix):
            raise ValueError("tridiagonal engines take real input")
        if (matrix >= 0).all():
            q, m = shift_a_to_q(matrix)
        else:
            q, m = matrix, 0.0
        tq = tridiagonal_from_dense(q)
    result = tridiag_pipeline(tq, variant=variant, cfg=cfg, m=m)
    pair = result.eigenpair
    extra = {"rho_a": result.rho_a, "m": result.m, "g": result.g.tolist()}

    def rho_scale(s):
        # the bracket x <= lambda <= y maps to m - y <= rho <= m - x
        return result.m - float(np.real(s.y)), result.m - s.x, result.m - s.z

    _emit_trace(args, pair, extra=extra, value=result.rho_a, step_map=rho_scale)
    return _exit_code(pair.trace.stop_reason)


def _exit_code(stop_reason):
    if stop_reason in ("converged_gap", "converged_delta"):
        return EXIT_OK
    if stop_reason == "max_iter":
        return EXIT_MAX_ITER
    return EXIT_NUMERIC


def _emit_trace(args, pair, extra, value=None, step_map=None):
    value = pair.value if value is None else value
    step_map = step_map or (lambda s: (s.x, s.y, s.z))
    records = []
    for s in pair.trace.steps:
        x, y, z = step_map(s)
        records.append(
            {
                "n": s.n,
                "x": float(x),
                "y_re": float(np.real(y)),
                "y_im": float(np.imag(y)),
                "z": float(z),
                "residual": s.residual,
            }
        )
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["n", "x", "y_re", "y_im", "z", "stop_reason", "solves"])
        last = len(records)
        for rec in records:
            reason = pair.trace.stop_reason if rec["n"] == last else ""
            writer.writerow(
                [rec["n"], repr(rec["x"]), repr(rec["y_re"]), repr(rec["y_im"]),
                 repr(rec["z"]), reason, rec["n"]]
            )
        return
    vec = pair.vector
    doc = {
        "algorithm": pair.algorithm_id,
        "value_re": float(np.real(value)),
        "value_im": float(np.imag(value)),
        "stop_reason": pair.trace.stop_reason,
        "solves": pair.trace.solves_performed,
        "vector": [[z.real, z.imag] for z in vec] if np.iscomplexobj(vec) else vec.tolist(),
        "steps": records,
    }
    doc.update(extra)
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _run_table(args):
    header, rows = generate_table(args.id, max_n=args.max_n)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return EXIT_OK


def _run_gen(args):
    if args.model == "single-birth":
        if args.alpha is not None:
            raise ValueError("--alpha applies to the branching model only")
        matrix = single_birth_q(SingleBirthSpec(n=args.n, a_rule=args.a_rule))
    else:
        if args.alpha is None:
            raise ValueError("the branching model needs --alpha")
        matrix = branching_q(BranchingSpec(n=args.n, alpha=args.alpha))
    save_matrix(matrix, args.out)
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            return _run_solve(args)
        if args.command == "table":
            return _run_table(args)
        return _run_gen(args)
    except (MatrixFileError, ValueError, OSError) as exc:
        print(f"maxeig: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except MaxeigError as exc:
        print(f"maxeig: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
