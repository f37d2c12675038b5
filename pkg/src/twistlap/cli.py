"""Batch command-line interface.

Usage::

    twistlap poly --kappa -1 --nu 3 -m 1 -n 1
    twistlap verify --kappa -1 --nu 3 --format json
    twistlap spectrum --kappa 1 --nu 1 --m-max 4 --format csv
    twistlap gram --kappa -1 --nu 3 --entries "0,0;0,1;1,1"
    twistlap eval --kappa -1 --nu 3 -m 1 -n 2 --nx 5 --ny 5
    twistlap limit --nu 1 --m-max 3 --n-max 3

Exit codes: 0 success, 1 verification failure, 2 invalid input or range,
3 degenerate Rodrigues constant.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import BiPoly, DomainError, WeightedFn, WeightMismatchError, as_rational, format_rational
from .limits import default_kappa_sequence, hermite_limit_probe, route_crosscheck, weight_limit_check
from .operators import nabla_star, random_probes, verify_claim_D, verify_factorization, verify_intertwining
from .params import InvalidParamsError, LevelRangeError, SurfaceMagneticParams
from .polynomials import (
    P,
    UndefinedConstantError,
    complex_hermite,
    jacobi_contiguous_check,
    jacobi_derivative_check,
    jacobi_ode_residual,
)
from .spectral import eigenfunction, eigenvalue, gram_matrix, level_spec, verify_eigen

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_DEGENERATE = 0, 1, 2, 3

JACOBI_PARAMS = [Fraction(-7, 2), Fraction(-2), Fraction(-1, 2), Fraction(0), Fraction(1), Fraction(5, 2)]


class UsageError(ValueError):
    pass


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _entries(text: str) -> list[tuple[int, int]]:
    try:
        pairs = [tuple(int(v) for v in chunk.split(",")) for chunk in text.split(";") if chunk.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"entries must look like '0,0;1,1', got {text!r}") from None
    if not pairs or any(len(p) != 2 for p in pairs):
        raise argparse.ArgumentTypeError(f"entries must look like '0,0;1,1', got {text!r}")
    return pairs


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kappa", type=_rational, default=None, help="curvature, as 'p' or 'p/q'")
    common.add_argument("--nu", type=_rational, default=None, help="field strength, as 'p' or 'p/q'")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("human", "json", "csv"), default="human")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="twistlap", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[common], help="print P_{m,n} (or H_{m,n})")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--route", choices=("ladder", "d", "mixed", "jacobi", "hermite"), default="ladder")

    p = sub.add_parser("verify", parents=[common], help="run the exact identity suites")
    p.add_argument("--suite", choices=("all", "operators", "eigen", "claims", "jacobi", "routes"), default="all")
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--probes", type=int, default=100)
    p.add_argument("--jmax", type=int, default=10)
    p.add_argument("--claim-m-max", type=int, default=6)

    p = sub.add_parser("spectrum", parents=[common], help="list Landau levels")
    p.add_argument("--m-max", type=int, default=None, help="cap on m (default: bound, or 10)")

    p = sub.add_parser("gram", parents=[common], help="exact Gram matrix of eigenfunctions")
    p.add_argument("--entries", type=_entries, required=True, help="e.g. '0,0;0,1;1,1'")

    p = sub.add_parser("eval", parents=[common], help="evaluate Phi_{m,n} on a grid")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--xmin", type=float, default=None)
    p.add_argument("--xmax", type=float, default=None)
    p.add_argument("--ymin", type=float, default=None)
    p.add_argument("--ymax", type=float, default=None)
    p.add_argument("--nx", type=int, default=11)
    p.add_argument("--ny", type=int, default=11)

    p = sub.add_parser("limit", parents=[common], help="kappa -> 0 convergence to complex Hermite")
    p.add_argument("-m", type=int, default=None)
    p.add_argument("-n", type=int, default=None)
    p.add_argument("--m-max", type=int, default=3)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--kmin", type=int, default=4)
    p.add_argument("--kmax", type=int, default=12)
    p.add_argument("--sign", type=int, choices=(-1, 1), default=-1)
    return parser


def _fix_negative_values(argv: Sequence[str]) -> list[str]:
    # argparse takes "-1/2" for an option; glue rational values to their flag
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in ("--kappa", "--nu"):
            value = next(it, None)
            out.append(tok if value is None else f"{tok}={value}")
        else:
            out.append(tok)
    return out


def _params(args, need_kappa: bool = True) -> SurfaceMagneticParams:
    if args.nu is None or (need_kappa and args.kappa is None):
        raise UsageError("--kappa and --nu are required")
    return SurfaceMagneticParams(args.kappa, args.nu)


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _g17(x: float) -> str:
    return format(float(x), ".17g")


# ---------------------------------------------------------------------------
# commands; each returns (text, exit code)


def cmd_poly(args) -> tuple[str, int]:
    params = _params(args)
    if args.m < 0 or args.n < 0:
        raise UsageError("m and n must be nonnegative")
    params.check_level(args.m)
    if args.route == "hermite":
        poly = complex_hermite(args.m, args.n, params.nu)
    else:
        poly = P(params, args.m, args.n, args.route)
    if args.format == "json":
        return _json(poly.to_json()), EXIT_OK
    if args.format == "csv":
        return _csv(("i", "j", "c"), [(i, j, format_rational(c)) for (i, j), c in poly.items()]), EXIT_OK
    return f"{poly}\n", EXIT_OK


def _default_m_max(params: SurfaceMagneticParams, requested: int | None) -> int:
    bound = params.max_level
    if requested is None:
        return 6 if bound is None else min(6, bound)
    params.check_level(requested)
    return requested


def cmd_verify(args) -> tuple[str, int]:
    suites = {"operators", "eigen", "claims", "jacobi", "routes"} if args.suite == "all" else {args.suite}
    if suites == {"jacobi"} and args.nu is None:
        # the Jacobi suite does not depend on the surface
        args.kappa, args.nu = Fraction(-1), Fraction(3)
    params = _params(args)
    m_max = _default_m_max(params, args.m_max)
    kappa, nu = params.kappa, params.nu
    checks: list[dict] = []

    if "operators" in suites:
        probes = random_probes(kappa, args.probes, args.seed)
        for rep in verify_factorization(params, probes) + [verify_intertwining(params, probes)]:
            checks.append({"suite": "operators", **rep.to_json()})
        if kappa:
            bad = None
            for m in range(m_max + 1):
                b = nu + m * kappa
                for n in range(11):
                    gen = WeightedFn.power(kappa, -b / kappa, BiPoly.monomial(n, 0))
                    # the lowest level of L^b is the kernel of nabla*_{b+kappa}
                    if not nabla_star(b + kappa, gen, kappa).is_zero():
                        bad = {"m": m, "n": n}
                        break
                if bad:
                    break
            checks.append({"suite": "operators", "identity": "nabla*_(b+kappa) annihilates lowest level of L^b",
                           "probes": (m_max + 1) * 11, "passed": bad is None, "failure": bad})

    if "claims" in suites and kappa:
        probes = random_probes(kappa, args.probes, args.seed + 1)
        for m in range(args.claim_m_max + 1):
            checks.append({"suite": "claims", **verify_claim_D(m, kappa, probes).to_json()})

    if "jacobi" in suites:
        failure = None
        count = 0
        for a in JACOBI_PARAMS:
            for b in JACOBI_PARAMS:
                for j in range(args.jmax + 1):
                    count += 1
                    if not (jacobi_contiguous_check(j, a, b) and jacobi_derivative_check(j, a, b)):
                        failure = failure or {"j": j, "a": format_rational(a), "b": format_rational(b)}
        for l in range(9):
            count += 1
            if not jacobi_ode_residual(l, Fraction(-3, 2), 2)[1].is_zero():
                failure = failure or {"ode_degree": l}
        checks.append({"suite": "jacobi", "identity": "Jacobi contiguous, derivative and ODE",
                       "probes": count, "passed": failure is None, "failure": failure})

    if "eigen" in suites:
        failure = None
        count = 0
        for m in range(m_max + 1):
            for n in level_spec(params, m).indices(cap=args.n_max):
                count += 1
                if not verify_eigen(params, m, n):
                    failure = failure or {"m": m, "n": n}
        checks.append({"suite": "eigen", "identity": "L Phi = E Phi", "probes": count,
                       "passed": failure is None, "failure": failure})

    crosscheck = None
    if "routes" in suites and kappa:
        report = route_crosscheck(params, m_max, args.n_max)
        crosscheck = report.to_json()
        bad = report.first_failure()
        checks.append({"suite": "routes", "identity": "ladder = D = mixed; jacobi proportional",
                       "probes": len(report.entries), "passed": report.passed,
                       "failure": None if bad is None else bad.to_json()})

    passed = all(c["passed"] for c in checks)
    code = EXIT_OK if passed else EXIT_FAIL
    if args.format == "json":
        doc = {"kappa": format_rational(kappa), "nu": format_rational(nu), "seed": args.seed,
               "passed": passed, "checks": checks, "crosscheck": crosscheck}
        return _json(doc), code
    if args.format == "csv":
        rows = [(c["suite"], c["identity"], c["probes"], c["passed"]) for c in checks]
        return _csv(("suite", "identity", "probes", "passed"), rows), code
    lines = [f"{'PASS' if c['passed'] else 'FAIL'}  [{c['suite']}] {c['identity']} ({c['probes']} probes)"
             for c in checks]
    for c in checks:
        if not c["passed"]:
            lines.append(f"first failure: {json.dumps(c['failure'])}")
            break
    return "\n".join(lines) + "\n", code


def cmd_spectrum(args) -> tuple[str, int]:
    params = _params(args)
    bound = params.max_level
    top = bound if bound is not None else 10
    if args.m_max is not None:
        top = min(args.m_max, top)
    rows = []
    for m in range(top + 1):
        dim = level_spec(params, m).dimension
        rows.append((m, eigenvalue(params.kappa, params.nu, m), "inf" if dim is None else dim))
    if args.format == "json":
        return _json([{"m": m, "eigenvalue": format_rational(e), "level_dimension": d} for m, e, d in rows]), EXIT_OK
    if args.format == "csv":
        return _csv(("m", "eigenvalue", "level_dimension"), [(m, format_rational(e), d) for m, e, d in rows]), EXIT_OK
    lines = [f"{'m':>3}  {'eigenvalue':>12}  dimension"]
    lines += [f"{m:>3}  {format_rational(e):>12}  {d}" for m, e, d in rows]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_gram(args) -> tuple[str, int]:
    params = _params(args)
    for m, n in args.entries:
        if n not in level_spec(params, m):
            raise LevelRangeError(f"entry ({m},{n}) is outside the square-integrable range")
    gram = gram_matrix(params, args.entries)
    if args.format == "json":
        return _json([[v.to_json() for v in row] for row in gram]), EXIT_OK
    cells = [[format_rational(v.q) if v.is_finite else "divergent" for v in row] for row in gram]
    if args.format == "csv":
        header = [f"({m},{n})" for m, n in args.entries]
        return _csv(header, cells), EXIT_OK
    width = max(len(str(v)) for row in gram for v in row)
    return "\n".join("  ".join(f"{str(v):>{width}}" for v in row) for row in gram) + "\n", EXIT_OK


def cmd_eval(args) -> tuple[str, int]:
    params = _params(args)
    phi = eigenfunction(params, args.m, args.n)
    if params.kappa < 0:
        radius = 1 / math.sqrt(-float(params.kappa))
        half = 0.6 * radius
    else:
        radius, half = math.inf, 2.0
    xmin = -half if args.xmin is None else args.xmin
    xmax = half if args.xmax is None else args.xmax
    ymin = -half if args.ymin is None else args.ymin
    ymax = half if args.ymax is None else args.ymax
    if args.nx < 1 or args.ny < 1:
        raise UsageError("grid sizes must be positive")
    xs = np.linspace(xmin, xmax, args.nx)
    ys = np.linspace(ymin, ymax, args.ny)
    # row-major: y outer, x inner
    zs = (xs[None, :] + 1j * ys[:, None]).ravel()
    if params.kappa < 0 and np.any(1.0 + float(params.kappa) * np.abs(zs) ** 2 <= 0):
        raise DomainError(f"grid leaves the disc of radius {radius:.17g}")
    values = phi.evaluate(zs)
    rows = [(_g17(z.real), _g17(z.imag), _g17(v.real), _g17(v.imag), _g17(abs(v) ** 2))
            for z, v in zip(zs, values)]
    if args.format == "json":
        keys = ("x", "y", "re", "im", "abs2")
        return _json([dict(zip(keys, map(float, r))) for r in rows]), EXIT_OK
    return _csv(("x", "y", "re", "im", "abs2"), rows), EXIT_OK


def cmd_limit(args) -> tuple[str, int]:
    if args.nu is None:
        raise UsageError("--nu is required")
    seq = default_kappa_sequence(args.nu, args.kmin, args.kmax, args.sign)
    if args.m is not None or args.n is not None:
        if args.m is None or args.n is None:
            raise UsageError("give both -m and -n, or neither")
        cells = [(args.m, args.n)]
    else:
        cells = [(m, n) for m in range(args.m_max + 1) for n in range(args.n_max + 1)]
    reports = [hermite_limit_probe(args.nu, m, n, seq) for m, n in cells]
    rng = np.random.default_rng(args.seed)
    # sample radius 1/2 stays inside every disc of the default sequence
    points = 0.5 * np.exp(2j * np.pi * rng.random(8))
    levels = sorted({m for m, _ in cells})
    weight = [{"m": m, "errors": weight_limit_check(args.nu, m, seq, points)} for m in levels]
    ok = all(r.match for r in reports)
    code = EXIT_OK if ok else EXIT_FAIL
    if args.format == "json":
        return _json({"reports": [r.to_json() for r in reports], "weight_limit": weight, "match": ok}), code
    if args.format == "csv":
        rows = [(r.m, r.n, format_rational(k), _g17(d)) for r in reports for k, d in zip(r.kappas, r.diffs)]
        return _csv(("m", "n", "kappa", "diff"), rows), code
    lines = []
    for r in reports:
        order = "exact" if r.order is None else f"{r.order:.4f}"
        lines.append(f"({r.m},{r.n})  order={order}  final diff={r.diffs[-1]:.3e}  "
                     f"extrapolated={r.extrapolated_diff:.3e}  {'match' if r.match else 'MISMATCH'}")
    return "\n".join(lines) + "\n", code


COMMANDS = {
    "poly": cmd_poly,
    "verify": cmd_verify,
    "spectrum": cmd_spectrum,
    "gram": cmd_gram,
    "eval": cmd_eval,
    "limit": cmd_limit,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(_fix_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, code = COMMANDS[args.command](args)
    except UndefinedConstantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (InvalidParamsError, LevelRangeError, DomainError, UsageError, WeightMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_FAIL:
        print("verification failed", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
