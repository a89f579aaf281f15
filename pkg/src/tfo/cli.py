"""Command-line front end.

Exit status: 0 when every asserted claim passes, 1 when a claim fails,
2 on usage or precondition errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from . import analysis
from .diffops import DiffOpKind, DiffOpSpec
from .domain import build_grid
from .eigensolve import eig_sym_dense
from .fourier import build_gram, build_truncated_fourier
from .report import SpectralReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_N = {"prolate": 64, "hermite": 200, "semiaxis": 400}
DEFAULT_SIZES = {"prolate": (24, 48, 96), "hermite": (100, 200, 400)}


class UsageError(Exception):
    pass


def _positive(kind):
    def parse(text):
        try:
            value = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}")
        if not (value > 0 and math.isfinite(value)):
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return value
    return parse


def _sizes(text):
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if any(s <= 0 for s in sizes):
        raise argparse.ArgumentTypeError("grid sizes must be positive")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--case", choices=[k.value for k in DiffOpKind], default="prolate")
    common.add_argument("--a", type=_positive(float), default=1.0, help="interval half-width")
    common.add_argument("--cutoff", type=_positive(float), default=None,
                        help="truncation radius for unbounded domains")
    common.add_argument("--n", type=_positive(int), default=None, help="grid size")
    common.add_argument("--modes", type=_positive(int), default=8)
    common.add_argument("--sizes", type=_sizes, default=None, help="grid sizes, e.g. 24,48,96")
    common.add_argument("--format", choices=["csv", "json"], default="json")
    common.add_argument("--output", default=None, help="output file (default: stdout)")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for random test vectors (default: $TFO_SEED or 0)")

    parser = argparse.ArgumentParser(prog="tfo", description="Truncated Fourier operator checks.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("pswf", parents=[common], help="prolate modes and their Fourier eigenvalues")
    sub.add_parser("spectrum", parents=[common], help="Gram spectrum")
    sub.add_parser("commutator", parents=[common], help="matrix-level commutator residuals")
    sub.add_parser("verify", parents=[common], help="all checks for one domain")
    sub.add_parser("converge", parents=[common], help="commutator residuals over grid sizes")
    return parser


def resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("TFO_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"TFO_SEED must be an integer, got {env!r}")


def _case(args) -> DiffOpSpec:
    return DiffOpSpec(DiffOpKind(args.case), args.a if args.case == "prolate" else None)


def _require_discrete_basis(args) -> None:
    if args.case == "semiaxis":
        raise UsageError(f"{args.command} needs a commuting discrete eigenbasis; not available on the semiaxis")


def run_pswf(args, seed):
    if args.case != "prolate":
        raise UsageError("pswf runs on the interval (--case prolate)")
    n = args.n or DEFAULT_N["prolate"]
    pswf = analysis.compute_pswf(args.a, args.modes, n)
    rep = SpectralReport("pswf", grid=pswf.grid.metadata(), seed=seed)
    rep.extend(analysis.pswf_claims(pswf))
    rep.merge(analysis.verify_cross_spectrum(pswf.lambdas))
    header = ["n", "chi_n", "mu_n", "re_lambda", "im_lambda", "parity", "defect"]
    rows = [[m.index, m.chi, m.mu, m.lam.real, m.lam.imag, m.parity, m.defect] for m in pswf.modes]
    return rep, (header, rows)


def run_spectrum(args, seed):
    _require_discrete_basis(args)
    case = _case(args)
    n = args.n or DEFAULT_N[args.case]
    grid = build_grid(case.domain(args.cutoff), n)
    G = build_gram(build_truncated_fourier(grid))
    ev = eig_sym_dense(G).eigenvalues[::-1]
    rep = SpectralReport("spectrum", grid=grid.metadata(), seed=seed)
    rep.merge(analysis.verify_gram_spectrum(grid))
    if case.kind is DiffOpKind.PROLATE:
        pswf = analysis.compute_pswf(args.a, min(args.modes, n // 4), n)
        rep.merge(analysis.verify_cross_spectrum(pswf.lambdas))
    return rep, (["k", "gram_eigenvalue"], [[k, float(v)] for k, v in enumerate(ev)])


def run_commutator(args, seed):
    _require_discrete_basis(args)
    case = _case(args)
    n = args.n or DEFAULT_N[args.case]
    grid = build_grid(case.domain(args.cutoff), n)
    F = build_truncated_fourier(grid)
    L = analysis.build_case_operator(case, grid)
    rep = SpectralReport("commutator", grid=grid.metadata(), seed=seed)
    rep.merge(analysis.verify_commutation_matrix(case, grid, L, F, seed))
    if case.kind is DiffOpKind.PROLATE:
        rep.merge(analysis.commutation_negative_control(grid, seed))
    return rep, None


def run_verify(args, seed):
    n = args.n or DEFAULT_N[args.case]
    rep = analysis.verify_case(_case(args), n, cutoff=args.cutoff, seed=seed, n_modes=args.modes)
    return rep, None


def run_converge(args, seed):
    _require_discrete_basis(args)
    sizes = args.sizes or DEFAULT_SIZES[args.case]
    rep = analysis.convergence_study(_case(args), sizes, seed=seed, cutoff=args.cutoff)
    rows = [[n, r, mu] for n, r, mu in zip(rep.data["sizes"], rep.data["residuals"], rep.data["mu0"])]
    return rep, (["n", "filtered_residual", "mu_0"], rows)


COMMANDS = {
    "pswf": run_pswf,
    "spectrum": run_spectrum,
    "commutator": run_commutator,
    "verify": run_verify,
    "converge": run_converge,
}


def _finite_or_none(v):
    return v if v is None or not isinstance(v, float) or math.isfinite(v) else None


def _fmt(v) -> str:
    if isinstance(v, bool) or v is None:
        return "" if v is None else str(v).lower()
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def render(rep: SpectralReport, table, fmt: str) -> str:
    if fmt == "json":
        doc = rep.to_dict()
        for c in doc["claims"]:
            c["value"] = _finite_or_none(c["value"])
        if table is not None:
            header, rows = table
            doc["table"] = [dict(zip(header, [_finite_or_none(v) for v in row])) for row in rows]
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    if table is not None:
        header, rows = table
    else:
        header = ["id", "anchor", "value", "tol", "pass"]
        rows = [[c.id, c.anchor, c.value, c.tol, c.passed] for c in rep.claims]
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        seed = resolve_seed(args.seed)
        rep, table = COMMANDS[args.command](args, seed)
    except analysis.PreconditionError as exc:
        print(f"tfo: precondition failed: {exc}", file=sys.stderr)
        print(exc.report.summary(), file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError, analysis.GridTooCoarseError) as exc:
        print(f"tfo: {exc}", file=sys.stderr)
        return EXIT_USAGE

    text = render(rep, table, args.format)
    if args.output is None:
        sys.stdout.write(text)
    else:
        try:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"tfo: cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    for c in rep.failures:
        print(f"tfo: FAIL {c.id}: {c.value} (tol {c.tol})", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
