"""Command-line front end.

Exit codes: 0 ok, 2 input or flag error, 3 domain error (the energy is not an
eigenvalue, the perturbation has a vanishing sector element, or a numerical
kernel gives up), 4 divergent strength function.
"""
from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import __version__
from .degeneracy import DegeneracyReport, classify, default_tol, strength_function, strength_table
from .errors import DivergentStrength, SpectralError
from .io import (
    ParseError,
    digest,
    dumps,
    matrix_document,
    matrix_from_entries,
    parse_complex,
    read_matrix,
    sweep_csv,
)
from .modal import flv_expand
from .numcore import spectral_norm
from .perturb import predict_polygons
from .response import CLUSTER_RADIUS, RESONANCE_TOL, eigenvalue_clusters, power_sweep

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN, EXIT_DIVERGENT = 0, 2, 3, 4
TOOL = "nhresponse"


class UsageError(ValueError):
    pass


# -- argument types ----------------------------------------------------------

def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _finite_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"non-finite value: {text!r}")
    return x


def _positive_float(text: str) -> float:
    x = _finite_float(text)
    if x <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return x


def _nonzero_float(text: str) -> float:
    x = _finite_float(text)
    if x == 0:
        raise argparse.ArgumentTypeError("must be nonzero")
    return x


def resolve_tol(flag: float | None, n: int) -> float:
    if flag is not None:
        return flag
    env = os.environ.get("NHR_TOL")
    if env:
        try:
            return _positive_float(env)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"NHR_TOL: {exc}") from None
    return default_tol(n)


# -- document builders -------------------------------------------------------

def report_fields(report: DegeneracyReport, h) -> dict:
    exp = flv_expand(h, report.eigenvalue)
    table = strength_table(exp, report.alpha, report.alpha, report.tol)
    return {
        "eigenvalue": report.eigenvalue,
        "alpha": report.alpha,
        "gamma": report.gamma,
        "ell": report.ell,
        "beta": report.beta,
        "c_alpha": report.c_alpha,
        "b_star_index": report.b_star_index,
        "b_star": report.b_star,
        "xi": report.xi,
        "xi_squared": report.xi ** 2,
        "eta": report.eta,
        "eta_squared": report.eta ** 2,
        "partial_strengths": report.partial_strengths,
        "petermann": report.petermann,
        "leading_right": report.leading_right,
        "leading_left": report.leading_left,
        "strength_table": {f"{n},{m}": v for (n, m), v in table.items()},
    }


def analyze_document(h, tol: float, omega: complex | None = None) -> dict:
    h = np.asarray(h, dtype=np.complex128)
    doc = {
        "tool": TOOL,
        "version": __version__,
        "input_digest": digest(h),
        "n": int(h.shape[0]),
        "tolerances": {"degeneracy": tol, "resonance": RESONANCE_TOL},
    }
    if omega is not None:
        doc["omega"] = omega
        doc["eigenvalues"] = [report_fields(classify(h, omega, tol), h)]
        return doc
    radius = CLUSTER_RADIUS * spectral_norm(h)
    doc["tolerances"]["cluster_radius"] = radius
    clusters = eigenvalue_clusters(h, radius)
    doc["clusters"] = [{"centre": c, "roots": g, "size": len(g)} for c, g in clusters]
    doc["eigenvalues"] = [report_fields(classify(h, c, tol), h) for c, _ in clusters]
    return doc


def modes_document(h, omega: complex) -> dict:
    exp = flv_expand(h, omega)
    return {
        "omega": complex(omega),
        "n": exp.n,
        "coeffs": list(exp.coeffs.coeffs),
        "modes": [dict(matrix_document(exp.modes[k]), k=k) for k in range(exp.n)],
    }


def parse_modes_document(doc: dict) -> dict:
    """Rebuild the in-memory form of a ``modes`` dump (used for round trips)."""
    n = doc["n"]
    coeffs = [complex(*c) for c in doc["coeffs"]]
    if len(coeffs) != n + 1:
        raise ParseError("coefficient count does not match n")
    modes = []
    for k, entry in enumerate(doc["modes"]):
        if entry["k"] != k:
            raise ParseError("modes out of order")
        modes.append(matrix_from_entries(entry["entries"], entry["n"], f"modes[{k}]"))
    return {"omega": complex(*doc["omega"]), "n": n, "coeffs": coeffs, "modes": modes}


def perturb_document(h0, hp, epsilon: float, omega: complex, tol: float) -> dict:
    report = classify(h0, omega, tol)
    pred = predict_polygons(h0, hp, epsilon, report)
    return {
        "tool": TOOL,
        "version": __version__,
        "input_digest": {"h0": digest(h0), "h_prime": digest(hp)},
        "tolerances": {"degeneracy": tol},
        "epsilon": pred.epsilon,
        "omega": complex(omega),
        "signature": list(report.signature),
        "c_alpha": report.c_alpha,
        "sectors": [
            {"h": s.h, "radius": s.radius, "rotation": s.rotation, "vertices": s.vertices}
            for s in pred.sectors
        ],
        "vertices": pred.vertices,
        "exact_roots": sorted(pred.exact_roots, key=lambda z: (z.real, z.imag)),
        "matched_error": pred.matched_error,
    }


# -- commands ----------------------------------------------------------------

def _load(args, path: str):
    return read_matrix(path, args.format)


def cmd_analyze(args, out) -> int:
    h = _load(args, args.matrix)
    tol = resolve_tol(args.tol, h.shape[0])
    out.write(dumps(analyze_document(h, tol, args.omega)))
    return EXIT_OK


def cmd_greens(args, out) -> int:
    h = _load(args, args.matrix)
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    if not args.e_max > args.e_min:
        raise UsageError("--e-max must exceed --e-min")
    if args.loss < 0:
        raise UsageError("--loss must be non-negative")
    sweep = power_sweep(h, args.e_min, args.e_max, args.steps, args.loss)
    out.write(sweep_csv(sweep.energies, sweep.powers))
    return EXIT_OK


def cmd_modes(args, out) -> int:
    h = _load(args, args.matrix)
    out.write(dumps(modes_document(h, args.omega)))
    return EXIT_OK


def cmd_perturb(args, out) -> int:
    h0 = _load(args, args.h0)
    hp = _load(args, args.hprime)
    if hp.shape != h0.shape:
        raise UsageError("H0 and H' must have the same size")
    tol = resolve_tol(args.tol, h0.shape[0])
    out.write(dumps(perturb_document(h0, hp, args.epsilon, args.omega, tol)))
    return EXIT_OK


def cmd_strength(args, out) -> int:
    h = _load(args, args.matrix)
    n = h.shape[0]
    if not 1 <= args.n <= n or not 0 <= args.m <= n - 1:
        raise UsageError(f"need 1 <= n <= {n} and 0 <= m <= {n - 1}")
    tol = resolve_tol(args.tol, n)
    try:
        value = strength_function(flv_expand(h, args.omega), args.n, args.m, tol)
    except DivergentStrength:
        out.write("DIVERGENT\n")
        return EXIT_DIVERGENT
    out.write(dumps(value))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=TOOL, description="Spectral response of non-Hermitian matrices.")
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "csv-reim"), default="json",
        help="matrix file format (default: json)",
    )
    tol = argparse.ArgumentParser(add_help=False)
    tol.add_argument("--tol", type=_positive_float, default=None,
                     help="degeneracy tolerance (default: $NHR_TOL or 1e-9*n)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common, tol], help="classify every eigenvalue or one at --omega")
    p.add_argument("matrix")
    p.add_argument("--omega", type=_complex_arg, default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("greens", parents=[common], help="response power sweep as CSV")
    p.add_argument("matrix")
    p.add_argument("--e-min", type=_finite_float, required=True)
    p.add_argument("--e-max", type=_finite_float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--loss", type=_finite_float, required=True)
    p.set_defaults(func=cmd_greens)

    p = sub.add_parser("modes", parents=[common], help="characteristic coefficients and adjugate modes")
    p.add_argument("matrix")
    p.add_argument("--omega", type=_complex_arg, default=0j)
    p.set_defaults(func=cmd_modes)

    p = sub.add_parser("perturb", parents=[common, tol], help="first-order polygon splitting")
    p.add_argument("h0")
    p.add_argument("hprime")
    p.add_argument("--epsilon", type=_nonzero_float, required=True)
    p.add_argument("--omega", type=_complex_arg, required=True)
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("strength", parents=[common, tol], help="one response-strength value")
    p.add_argument("matrix")
    p.add_argument("--omega", type=_complex_arg, default=0j)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_strength)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (ParseError, UsageError) as exc:
        err.write(f"{TOOL}: error: {exc}\n")
        return EXIT_INPUT
    except SpectralError as exc:
        err.write(f"{TOOL}: {type(exc).__name__}: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
