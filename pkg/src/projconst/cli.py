"""Command-line front end.

Exit status: 0 on success, 1 when a verification or certificate check fails,
2 on bad arguments or unreadable input.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import bounds, families, verify
from .errors import (
    ArgumentError,
    ConvergenceError,
    MatrixParseError,
    ProjConstError,
    ResourceBudgetError,
)
from .formats import (
    SCREEN_DIGITS,
    fmt,
    format_certificate,
    format_matrix,
    parse_certificate,
    read_matrix_file,
)
from .search import (
    CertificateError,
    OptimizerConfig,
    best_constant,
    certify_matrix,
    default_jobs,
)
from .spectra import eigenvalues, signature, weighted_objective, weighted_spectrum
from .twograph import complement, is_clique_free, two_graph_of

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# tolerance used by `certify` when comparing recorded and recomputed numbers
CERTIFY_TOL = 1e-10


def screen(x) -> str:
    return fmt(x, SCREEN_DIGITS)


def _out(text: str = "") -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_record(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _config(args) -> OptimizerConfig:
    return OptimizerConfig(
        starts=getattr(args, "starts", 16),
        seed=getattr(args, "seed", 0),
        jobs=args.jobs,
    )


def _parse_weights(text: str, d: int) -> np.ndarray:
    try:
        w = np.array([float(t) for t in text.split(",")])
    except ValueError:
        raise ArgumentError(f"cannot parse weights {text!r}") from None
    if w.size != d:
        raise ArgumentError(f"expected {d} weights, got {w.size}")
    return w


def _print_matrices(mats) -> None:
    # one matrix file per block, blocks separated by a blank line
    _out("\n".join(format_matrix(M) for M in mats).rstrip("\n"))


# ---------------------------------------------------------------------------
# subcommands


def cmd_eig(args) -> int:
    M = read_matrix_file(args.file, general=args.general)
    for lam in eigenvalues(M):
        _out(screen(lam))
    return EXIT_OK


def cmd_objective(args) -> int:
    A = read_matrix_file(args.file)
    D = _parse_weights(args.weights, A.shape[0])
    _out(screen(weighted_objective(A, D, args.n)))
    return EXIT_OK


def cmd_optimize(args) -> int:
    A = read_matrix_file(args.file)
    cert = certify_matrix(A, args.n, _config(args))
    _emit_record(format_certificate(cert, args.seed), args.output)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    reps = families.enumerate_two_graphs(args.order)
    if args.free is not None:
        reps = [A for A in reps if is_clique_free(two_graph_of(A), args.free)]
    if args.signature is not None:
        try:
            p, q = (int(t) for t in args.signature.split(","))
        except ValueError:
            raise ArgumentError(f"--signature expects P,Q, got {args.signature!r}") from None
        reps = [A for A in reps if signature(A)[0::2] == (p, q)]
    if reps:
        _print_matrices(reps)
    sys.stderr.write(f"{len(reps)} classes\n")
    return EXIT_OK


def cmd_search(args) -> int:
    cfg = _config(args)
    cert = best_constant(args.n, args.d, cfg, mode=args.mode)
    _emit_record(format_certificate(cert, args.seed), args.output)
    return EXIT_OK


def cmd_family(args) -> int:
    kind, rest = args.kind, args.args
    need = {"polygon": 1, "a6": 0, "omega": 1, "double": 1, "complement": 1}[kind]
    if len(rest) != need:
        raise ArgumentError(f"family {kind} takes {need} argument(s)")
    if kind == "polygon":
        mats = [families.polygon_matrix(_int(rest[0]))]
    elif kind == "a6":
        mats = [families.a6()]
    elif kind == "omega":
        mats = families.omega_members(_int(rest[0]))
    elif kind == "double":
        mats = [families.kronecker_double(read_matrix_file(rest[0]))]
    else:
        mats = [complement(read_matrix_file(rest[0]))]
    _print_matrices(mats)
    return EXIT_OK


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ArgumentError(f"expected an integer, got {text!r}") from None


def _float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ArgumentError(f"expected a number, got {text!r}") from None


def cmd_bound(args) -> int:
    kind, rest = args.kind, args.args
    arity = {"ks": 1, "kll": 2, "bohnenblust": 1, "lift": 3}[kind]
    if len(rest) != arity:
        raise ArgumentError(f"bound {kind} takes {arity} argument(s)")
    if kind == "ks":
        value = bounds.kadets_snobar(_int(rest[0]))
    elif kind == "kll":
        value = bounds.kll_upper(_int(rest[0]), _int(rest[1]))
    elif kind == "bohnenblust":
        value = bounds.bohnenblust_upper(_int(rest[0]))
    else:
        value = bounds.lift_upper(_int(rest[0]), _int(rest[1]), _float(rest[2]))
    _out(screen(value))
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config(args)
    if args.target == "lemmas":
        report = verify.verify_lemmas(seed=args.seed)
    else:
        report = {"pi2": verify.verify_pi2, "pi36": verify.verify_pi36,
                  "pi46": verify.verify_pi46}[args.target](cfg)
    for key, value in report.values.items():
        _out(f"{key} = {screen(value)}")
    for check in report.checks:
        _out(check.line())
    _out("PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_FAIL


def certify_record(text: str) -> list[str]:
    """Independent re-check of a certificate record; returns the failed checks."""
    cert, _ = parse_certificate(text)
    if cert.matrix.shape[0] != cert.d or cert.weights.size != cert.d or cert.spectrum.size != cert.d:
        return ["shape"]
    bad = cert.failures(CERTIFY_TOL)
    if "weights" not in bad:
        spectrum = weighted_spectrum(cert.matrix, cert.weights)
        if np.max(np.abs(spectrum - cert.spectrum)) > CERTIFY_TOL:
            bad.append("spectrum")
    return bad


def cmd_certify(args) -> int:
    try:
        with open(args.record, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ArgumentError(str(exc)) from None
    bad = certify_record(text)
    if bad:
        _out(f"FAIL: {', '.join(bad)}")
        return EXIT_FAIL
    cert, _ = parse_certificate(text)
    _out(f"value = {screen(cert.value)}")
    _out("PASS")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="projconst",
        description="Certified lower bounds for relative projection constants.",
    )
    jobs = argparse.ArgumentParser(add_help=False)
    jobs.add_argument("--jobs", type=int, default=None,
                      help="worker processes (default: $PROJCONST_JOBS or 1)")
    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument("--starts", type=int, default=16)
    seeded.add_argument("--seed", type=int, default=0)
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--output", "-o", default=None, help="write the certificate record here")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eig", help="eigenvalues of a matrix file")
    p.add_argument("file")
    p.add_argument("--general", action="store_true", help="accept any symmetric real matrix")
    p.set_defaults(func=cmd_eig)

    p = sub.add_parser("objective", help="pi_n(sqrt(D) A sqrt(D)) for given weights")
    p.add_argument("file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weights", required=True, help="comma-separated, summing to 1")
    p.set_defaults(func=cmd_objective)

    p = sub.add_parser("optimize", parents=[jobs, seeded, out], help="optimize weights for a sign matrix")
    p.add_argument("file")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("enumerate", help="switching-class census of a given order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--free", type=int, default=None, metavar="M", help="keep K_M-free classes only")
    p.add_argument("--signature", default=None, metavar="P,Q",
                   help="keep classes with P positive and Q negative eigenvalues")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("search", parents=[jobs, seeded, out], help="best certificate for Pi(n, d)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--mode", choices=["exhaustive", "heuristic"], default="exhaustive")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("family", help="polygon N | a6 | omega D | double FILE | complement FILE")
    p.add_argument("kind", choices=["polygon", "a6", "omega", "double", "complement"])
    p.add_argument("args", nargs="*")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("bound", help="ks N | kll N D | bohnenblust D | lift N D VALUE")
    p.add_argument("kind", choices=["ks", "kll", "bohnenblust", "lift"])
    p.add_argument("args", nargs="*")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", parents=[jobs, seeded], help="reproduce a known value or identity suite")
    p.add_argument("target", choices=["pi2", "pi36", "pi46", "lemmas"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", help="re-verify a certificate record")
    p.add_argument("record")
    p.set_defaults(func=cmd_certify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if hasattr(args, "jobs"):
        try:
            args.jobs = default_jobs() if args.jobs is None else args.jobs
        except ValueError:
            sys.stderr.write("projconst: PROJCONST_JOBS must be an integer\n")
            return EXIT_USAGE
    try:
        return args.func(args)
    except (CertificateError, ConvergenceError) as exc:
        sys.stderr.write(f"projconst: {exc}\n")
        return EXIT_FAIL
    except (MatrixParseError, ArgumentError, ResourceBudgetError, ProjConstError, OSError) as exc:
        sys.stderr.write(f"projconst: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
