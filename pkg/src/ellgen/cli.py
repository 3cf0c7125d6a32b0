"""Command-line front end.

Exit codes: 0 success, 1 verification check failed, 2 malformed input
(also used by argparse for usage errors), 3 dimension/domain errors.
All series output is exact rational except the `sobolev` command.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .bundles import ell2_via_bundles, expand_witten
from .chern import Manifold, partitions_of
from .errors import DimMismatch, NotInUpperHalfPlane, ResidualNonzero
from .genera import (
    Hypersurface,
    cancellation_class,
    cancellation_residual,
    genus,
    hypersurface_pont,
)
from .modular import delta1, delta2, eps1, eps2, expand_in_basis, numeric_eval, reconstruct_ell1
from .series import USeries
from .sobolev import radius_r, sobolev_c, wallis
from .theta import GenusKind

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_DOMAIN = 3


def _load_manifold(path: str) -> Manifold:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    m = Manifold.from_json(obj)
    missing = m.missing_partitions()
    if missing:
        names = ", ".join("p" + "p".join(map(str, p)) for p in missing)
        print(
            f"warning: {path}: Pontryagin numbers {names} missing, assuming 0",
            file=sys.stderr,
        )
    return m


def _emit_series(s: USeries, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(s.to_json()))
    else:
        print(s.qstring())


def cmd_genus(args) -> int:
    m = _load_manifold(args.manifold)
    result = genus(m, GenusKind(args.genus), args.uorder)
    _emit_series(result, args.format)
    return EXIT_OK


def cmd_hypersurface(args) -> int:
    h = Hypersurface(ambient=args.ambient, degree=args.degree)
    m = hypersurface_pont(h)
    sigma = genus(m, GenusKind.LHAT, 1).coeff(0)
    ahat = genus(m, GenusKind.AHAT, 1).coeff(0)
    ell2 = genus(m, GenusKind.ELL2, args.uorder)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "manifold": m.to_json(),
                    "signature": str(sigma),
                    "ahat": str(ahat),
                    "ell2": ell2.to_json(),
                }
            )
        )
    else:
        print(json.dumps(m.to_json()))
        print(f"signature = {sigma}")
        print(f"ahat      = {ahat}")
        print(f"ell2      = {ell2.qstring()}")
    return EXIT_OK


def cmd_bundles(args) -> int:
    which = "theta1" if args.which == "theta1" else "theta2"
    label = "A" if which == "theta1" else "B"
    bqs = expand_witten(which, args.n, args.uorder)
    if args.format == "json":
        out = {
            f"{label}{k}": bqs.coeff(k).pretty() for k in range(args.uorder)
        }
        print(json.dumps(out))
    else:
        for k in range(args.uorder):
            print(f"{label}{k} = {bqs.coeff(k).pretty()}")
    return EXIT_OK


def _random_manifold(n: int, rng: random.Random) -> Manifold:
    pont = {
        p: Fraction(rng.randint(-60, 60), rng.randint(1, 6)) for p in partitions_of(n)
    }
    return Manifold(name=f"random-n{n}", dim=4 * n, pont=pont)


def _parse_tau(text: str) -> complex:
    text = text.strip().replace(" ", "")
    if text == "i":
        return 1j
    if text.startswith("i/"):
        return 1j / float(text[2:])
    if text.endswith("i"):
        return float(text[:-1]) * 1j
    return complex(text.replace("i", "j"))


def cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    report: dict = {"check": args.check}
    failures: list[str] = []

    if args.check == "cancellation":
        if not cancellation_class().is_zero():
            failures.append("symbolic weight-2 residual is nonzero")
        residuals = []
        for _ in range(args.samples):
            p11 = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 999))
            p2 = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 999))
            r = cancellation_residual(p11, p2)
            residuals.append(str(r))
            if r:
                failures.append(f"residual {r} at (p1^2, p2) = ({p11}, {p2})")
        report["samples"] = args.samples
        report["residuals"] = residuals
        report["residual"] = "0" if not failures else "nonzero"

    elif args.check == "modular-relation":
        n = args.n
        uorder = args.uorder
        report["n"] = n
        report["uorder"] = uorder
        resid = "0"
        for _ in range(args.samples):
            m = _random_manifold(n, rng)
            e2 = genus(m, GenusKind.ELL2, uorder)
            try:
                dec = expand_in_basis(e2, n)
            except ResidualNonzero as exc:
                failures.append(f"{m.name}: {exc}")
                resid = "nonzero"
                continue
            if reconstruct_ell1(dec, uorder) != genus(m, GenusKind.ELL1, uorder):
                failures.append(f"{m.name}: reconstructed Ell1 mismatch")
                resid = "nonzero"
        report["residual"] = resid

    elif args.check == "route-equivalence":
        n = args.n
        uorder = args.uorder
        report["n"] = n
        report["uorder"] = uorder
        for _ in range(args.samples):
            m = _random_manifold(n, rng)
            if ell2_via_bundles(m, uorder) != genus(m, GenusKind.ELL2, uorder):
                failures.append(f"{m.name}: bundle route disagrees with theta route")
        report["residual"] = "0" if not failures else "nonzero"

    elif args.check == "transformation-laws":
        tau = _parse_tau(args.tau)
        uorder = max(args.uorder, 40)
        d2v, d2t = numeric_eval(delta2(uorder), -1 / tau)
        d1v, d1t = numeric_eval(delta1(uorder), tau)
        e2v, e2t = numeric_eval(eps2(uorder), -1 / tau)
        e1v, e1t = numeric_eval(eps1(uorder), tau)
        rd = abs(d2v - tau**2 * d1v)
        re = abs(e2v - tau**4 * e1v)
        tol = max(1e-9, 10 * (d2t + d1t + e2t + e1t))
        report["tau"] = str(tau)
        report["delta_residual"] = rd
        report["eps_residual"] = re
        report["tolerance"] = tol
        if rd > tol:
            failures.append(f"delta law residual {rd} above {tol}")
        if re > tol:
            failures.append(f"eps law residual {re} above {tol}")

    else:
        raise ValueError(f"unknown check {args.check!r}")

    report["pass"] = not failures
    if failures:
        report["failures"] = failures
    print(json.dumps(report, default=str))
    return EXIT_OK if not failures else EXIT_CHECK_FAILED


def cmd_sobolev(args) -> int:
    c = sobolev_c(args.m, args.b, args.tol)
    out = {
        "m": args.m,
        "b": args.b,
        "C_b": c,
        "R": radius_r(args.diam, args.b, args.m, args.tol),
        "residual": abs(_residual(args.m, args.b, c)),
        "wallis": wallis(args.m),
    }
    print(json.dumps(out))
    return EXIT_OK


def _residual(m: int, b: float, x: float) -> float:
    from .sobolev import _xF

    return _xF(m, b, x, 1e-13) - wallis(m)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellgen",
        description="Exact elliptic genera, Witten genus and characteristic numbers.",
    )
    parser.add_argument("--version", action="version", version=f"ellgen {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("genus", help="q-expansion of a genus from a manifold file")
    p.add_argument("--manifold", required=True, help="path to a Manifold JSON file")
    p.add_argument(
        "--genus",
        required=True,
        choices=[k.value for k in GenusKind],
        help="which genus to compute",
    )
    p.add_argument("--uorder", type=_positive_int, default=None, help="truncation order in u = q^(1/2)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("hypersurface", help="Pontryagin numbers and genera of X(N; d)")
    p.add_argument("--ambient", type=int, required=True, help="N of the ambient CP^N")
    p.add_argument("--degree", type=int, required=True, help="degree d of the hypersurface")
    p.add_argument("--uorder", type=_positive_int, default=8)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_hypersurface)

    p = sub.add_parser("bundles", help="expand the Witten bundles into A_k / B_k")
    p.add_argument("--n", type=int, required=True, help="manifold parameter (dim = 4n)")
    p.add_argument("--uorder", type=_positive_int, default=5)
    p.add_argument("--which", choices=["theta1", "theta2"], default="theta2")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_bundles)

    p = sub.add_parser("verify", help="run one of the identity suites")
    p.add_argument(
        "--check",
        required=True,
        choices=["cancellation", "modular-relation", "route-equivalence", "transformation-laws"],
    )
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--uorder", type=_positive_int, default=12)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0, help="RNG seed for reproducible runs")
    p.add_argument("--tau", default="i", help="evaluation point for transformation-laws")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sobolev", help="Poincare-Sobolev radius constant C(b) and R")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-11)
    p.add_argument("--diam", type=float, default=1.0)
    p.set_defaults(func=cmd_sobolev)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DimMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NotInUpperHalfPlane as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
