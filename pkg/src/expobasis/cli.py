"""Command-line front end.

Subcommands: construct, certify, oracle, verify, regress, beta, report.
Exit codes: 0 success, 1 precondition failure (named error), 2 verification
failure, 3 malformed JSON input.  ``EXPOBASIS_SEED`` overrides the default
seed; an explicit ``--seed`` wins over both.  Identical invocations with
identical seeds emit byte-identical reports.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import jsonio
from .constructions import (
    FrameCertificate,
    associated_matrix,
    certificate_from_json,
    certificate_to_json,
    certify_lattice_subset,
    certify_lattice_subset_paired,
    complement_certificate,
    construct_interval_removal,
    construct_perturbed_union,
    residue_orthogonal_basis,
    solve_beta,
)
from .errors import JsonInputError, PreconditionError, RegressionFailure
from .spectral import singular_values
from .verify import regression_examples, verify_certificate

METHOD_CHOICES = (
    "perturbed-union",
    "lattice-subset",
    "lattice-subset-paired",
    "interval-removal",
    "residue-orthogonal",
    "complement",
)


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise PreconditionError(f"expected comma-separated integers, got {text!r}") from exc


def _parse_rational(text: str):
    """Exact Fraction for '1/24'-style input, float otherwise."""
    text = text.strip()
    try:
        if "/" in text:
            return Fraction(text)
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise PreconditionError(f"cannot parse number {text!r}") from exc


def _parse_rational_list(text: str) -> list:
    return [_parse_rational(v) for v in text.split(",") if v.strip() != ""]


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("EXPOBASIS_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise PreconditionError(f"EXPOBASIS_SEED must be an integer, got {env!r}") from exc
    return 42


def _load_input(value: str) -> dict:
    if value.lstrip().startswith("{"):
        return jsonio.loads(value)
    with open(value, encoding="utf-8") as fh:
        return jsonio.loads(fh.read())


def _require(args, names: list[str], method: str):
    missing = [n for n in names if getattr(args, n.lstrip("-").replace("-", "_"), None) is None]
    if missing:
        raise PreconditionError(f"method {method} requires {', '.join(missing)}")


def _build_certificate(args) -> FrameCertificate:
    method = args.method
    if method == "perturbed-union":
        _require(args, ["--s", "--a", "--epsilons", "--delta"], method)
        return construct_perturbed_union(args.s, _parse_int_list(args.a),
                                         _parse_rational_list(args.epsilons),
                                         _parse_rational(args.delta))
    if method == "lattice-subset":
        _require(args, ["--N", "--M", "--a", "--u"], method)
        return certify_lattice_subset(args.N, args.M, _parse_int_list(args.a), args.u)
    if method == "lattice-subset-paired":
        _require(args, ["--N", "--M", "--a", "--u"], method)
        return certify_lattice_subset_paired(args.N, args.M, _parse_int_list(args.a), args.u)
    if method == "interval-removal":
        _require(args, ["--N", "--m", "--delta"], method)
        return construct_interval_removal(args.N, args.m, _parse_rational(args.delta))
    if method == "residue-orthogonal":
        _require(args, ["--s", "--a"], method)
        return residue_orthogonal_basis(args.s, _parse_int_list(args.a))
    if method == "complement":
        _require(args, ["--Delta", "--input"], method)
        parent = certificate_from_json(_load_input(args.input))
        return complement_certificate(_parse_rational(args.Delta), parent)
    raise PreconditionError(f"unknown method {method!r}")


def _certificate_for(args) -> FrameCertificate:
    if getattr(args, "input", None) and args.method is None:
        return certificate_from_json(_load_input(args.input))
    if args.method is None:
        raise PreconditionError("provide a method or --input with a certificate")
    return _build_certificate(args)


def _matrix_summary(cert: FrameCertificate) -> dict | None:
    pair = associated_matrix(cert)
    if pair is None:
        return None
    matrix, scale = pair
    return {
        "size": matrix.size,
        "nodes": list(matrix.nodes),
        "deltas": [float(d) for d in matrix.deltas],
        "oracle_scale": scale,
    }


def _oracle_doc(cert: FrameCertificate) -> dict | None:
    pair = associated_matrix(cert)
    if pair is None:
        return None
    matrix, scale = pair
    spectrum = singular_values(matrix)
    return {
        "values": list(spectrum.values),
        "condition": spectrum.condition.value,
        "A_opt": spectrum.sigma_min ** 2,
        "B_opt": spectrum.sigma_max ** 2,
        "scale": scale,
    }


def _verify_doc(cert: FrameCertificate, args) -> tuple[dict, bool]:
    report = verify_certificate(cert, n_max=args.n_max, trials=args.trials,
                                seed=_resolve_seed(args))
    doc = {
        "schema": "v1",
        "certificate": certificate_to_json(cert),
        "oracle": None if report.oracle is None else {
            "A_opt": report.oracle_constants[0],
            "B_opt": report.oracle_constants[1],
            "scale": report.oracle_scale,
            "singular": report.oracle.is_singular,
        },
        "sample": {
            "min_ratio": report.sample.min_ratio,
            "max_ratio": report.sample.max_ratio,
            "trials": report.sample.trials,
            "seed": report.sample.seed,
            "n_max": report.sample.n_max,
        },
        "verdict": "pass" if report.ok else "fail",
        "violations": list(report.violations),
    }
    return doc, report.ok


def _emit(doc, args) -> None:
    if args.format == "json":
        text = jsonio.dumps(doc)
    else:
        text = _render_text(doc) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_text(doc, prefix: str = "") -> str:
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{prefix}{k}:")
                lines.append(_render_text(v, prefix + "  "))
            else:
                lines.append(f"{prefix}{k}: {v}")
    elif isinstance(doc, list):
        for v in doc:
            if isinstance(v, (dict, list)):
                lines.append(f"{prefix}-")
                lines.append(_render_text(v, prefix + "  "))
            else:
                lines.append(f"{prefix}- {v}")
    else:
        lines.append(f"{prefix}{doc}")
    return "\n".join(x for x in lines if x)


def _add_common(p: argparse.ArgumentParser, with_method: bool = True):
    if with_method:
        p.add_argument("method", nargs="?", choices=METHOD_CHOICES,
                       help="construction to run (omit when --input carries a certificate)")
    p.add_argument("--s", type=int, help="number of unit intervals / branches")
    p.add_argument("--N", type=int, help="grid denominator (or block length)")
    p.add_argument("--M", type=int, help="number of retained intervals")
    p.add_argument("--m", type=int, help="index of the removed interval")
    p.add_argument("--u", type=int, help="integer separation shift")
    p.add_argument("--a", type=str, help="comma-separated integer left endpoints, e.g. 0,3,7")
    p.add_argument("--epsilons", type=str,
                   help="comma-separated rational perturbations, e.g. 0,1/3,-1/4")
    p.add_argument("--delta", type=str, help="spectral shift (float or p/q)")
    p.add_argument("--Delta", type=str, help="length of the ambient block [0, Delta)")
    p.add_argument("--input", type=str, help="path to (or inline) JSON input")
    p.add_argument("--output", type=str, help="write the report here instead of stdout")
    p.add_argument("--seed", type=int, default=None, help="sampling seed (default: EXPOBASIS_SEED or 42)")
    p.add_argument("--trials", type=int, default=128, help="sampling trials (default 128)")
    p.add_argument("--n-max", type=int, default=8, help="frequency truncation (default 8)")
    p.add_argument("--format", choices=("json", "text"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expobasis",
        description="certified exponential Riesz bases on unions of unit intervals",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    for name, doc in (
        ("construct", "build a certified system and report certificate + matrix"),
        ("certify", "emit the certificate only"),
        ("oracle", "singular spectrum and optimal constants of the node matrix"),
        ("verify", "check a certificate against the oracle and Gram sampling"),
        ("report", "consolidated construct + oracle + verify + regressions"),
    ):
        p = sub.add_parser(name, help=doc)
        _add_common(p)

    p = sub.add_parser("regress", help="re-run the built-in counterexample fixtures")
    p.add_argument("--output", type=str)
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("beta", help="shift-window root(s) beta for a range of M")
    p.add_argument("--M", type=int, required=True, help="single M, or range start with --M-max")
    p.add_argument("--M-max", type=int, default=None)
    p.add_argument("--output", type=str)
    p.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def _run(args) -> int:
    if args.subcommand == "regress":
        try:
            results = regression_examples()
        except RegressionFailure as exc:
            results = exc.results
            doc = {"schema": "v1",
                   "regressions": [{"name": r.name, "passed": r.passed, "detail": r.detail}
                                   for r in results],
                   "verdict": "fail"}
            _emit(doc, args)
            return 2
        doc = {"schema": "v1",
               "regressions": [{"name": r.name, "passed": r.passed, "detail": r.detail}
                               for r in results],
               "verdict": "pass"}
        _emit(doc, args)
        return 0

    if args.subcommand == "beta":
        m_hi = args.M if args.M_max is None else args.M_max
        if m_hi < args.M:
            raise PreconditionError("--M-max must be >= --M")
        rows = []
        for m in range(args.M, m_hi + 1):
            sol = solve_beta(m)
            rows.append({"M": m, "beta": sol.beta, "residual": sol.residual,
                         "iterations": sol.iterations})
        _emit({"schema": "v1", "beta": rows}, args)
        return 0

    if args.subcommand == "certify":
        cert = _build_certificate(args)
        _emit(certificate_to_json(cert), args)
        return 0

    if args.subcommand == "construct":
        cert = _build_certificate(args)
        doc = {"schema": "v1", "certificate": certificate_to_json(cert),
               "matrix": _matrix_summary(cert)}
        _emit(doc, args)
        return 0

    if args.subcommand == "oracle":
        cert = _certificate_for(args)
        oracle = _oracle_doc(cert)
        if oracle is None:
            raise PreconditionError(f"no node-matrix oracle applies to method {cert.method!r}")
        _emit({"schema": "v1", "method": cert.method, "oracle": oracle}, args)
        return 0

    if args.subcommand == "verify":
        cert = _certificate_for(args)
        doc, ok = _verify_doc(cert, args)
        _emit(doc, args)
        return 0 if ok else 2

    if args.subcommand == "report":
        cert = _certificate_for(args)
        doc, ok = _verify_doc(cert, args)
        doc["matrix"] = _matrix_summary(cert)
        try:
            regs = regression_examples()
            doc["regressions"] = [{"name": r.name, "passed": r.passed} for r in regs]
        except RegressionFailure as exc:
            doc["regressions"] = [{"name": r.name, "passed": r.passed} for r in exc.results]
            ok = False
        doc["verdict"] = "pass" if ok else "fail"
        _emit(doc, args)
        return 0 if ok else 2

    raise PreconditionError(f"unknown subcommand {args.subcommand!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except JsonInputError as exc:
        print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 3
    except PreconditionError as exc:
        print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
