"""Command-line front-end: sweeps, quadrature tables, Laplace solves.

Every command prints its result to stdout (CSV or JSON) and can also
write it to a file atomically.  Floating-point values are emitted with
17 significant digits so downstream tools can reproduce the binary
values exactly.  Exit codes: 0 success, 2 parameter/validation error,
3 numerical failure (rank loss, accuracy not reached).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import bench, laplace, quadrature
from .approximant import (ANALYTIC_TAIL, LS_POLY, build_lp, eval_approximant,
                          load_approximant, sigma_opt, sup_error, to_json_dict)
from .core import G_CATALOG, POW, POW_LOG, PrototypeSpec, make_sector
from .errors import AccuracyError, PoleProximityError, RankError
from .fileio import atomic_write_text


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _parse_complex(s: str) -> complex:
    s = s.strip()
    if "," in s:
        re_s, im_s = s.split(",", 1)
        return complex(float(re_s), float(im_s))
    return complex(s.replace("i", "j"))


def _parse_sigma(token: str, alpha: float, beta: float) -> float:
    """A number, the literal ``opt``, or a multiple like ``1.5opt``."""
    token = token.strip()
    if token == "opt":
        return sigma_opt(alpha, beta)
    if token.endswith("opt"):
        return float(token[:-3]) * sigma_opt(alpha, beta)
    return float(token)


def _int_list(s: str) -> list[int]:
    return [int(tok) for tok in s.split(",") if tok.strip()]


def _float_list(s: str) -> list[float]:
    return [float(tok) for tok in s.split(",") if tok.strip()]


def _emit(text: str, path: str | None) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")
    if path:
        atomic_write_text(path, text if text.endswith("\n") else text + "\n")


def _default_jobs() -> int | None:
    env = os.environ.get("LP_THREADS")
    if env is not None:
        return max(1, int(env))
    return os.cpu_count()


def _spec_from_args(args) -> PrototypeSpec:
    return PrototypeSpec(kind=args.kind, alpha=args.alpha, g=args.g)


def _cmd_approx(args) -> int:
    if args.load:
        approx = load_approximant(args.load)
    else:
        spec = _spec_from_args(args)
        domain = make_sector(beta=args.beta, radius=args.radius)
        sigma = _parse_sigma(args.sigma, args.alpha, args.beta)
        approx = build_lp(spec, domain, sigma=sigma, N1=args.n1, N2=args.n2,
                          mode=args.mode, C=args.C)
    if args.eval is not None:
        z = _parse_complex(args.eval)
        val = eval_approximant(approx, z)
        print(f"eval {_fmt(z.real)},{_fmt(z.imag)} -> "
              f"{_fmt(val.real)},{_fmt(val.imag)}")
        if args.load and not args.emit:
            return 0
    err, argmax = sup_error(approx)
    print(f"sup_error {_fmt(err)} at {_fmt(argmax.real)},{_fmt(argmax.imag)}")
    payload = json.dumps(to_json_dict(approx), separators=(",", ":"))
    if args.emit:
        atomic_write_text(args.emit, payload + "\n")
    else:
        print(payload)
    return 0


def _cmd_sweep(args) -> int:
    spec = _spec_from_args(args)
    sigma = _parse_sigma(args.sigma, args.alpha, args.beta)
    records = bench.sweep_prototype(spec, args.beta, sigma, _int_list(args.n1),
                                    mode=args.mode, radius=args.radius,
                                    C=args.C, n_jobs=_default_jobs())
    _emit(bench.records_to_csv_text(records), args.out)
    if args.fit_report:
        model = bench.fit_rate(records, err_floor=args.floor,
                               err_cap=args.cap)
        atomic_write_text(args.fit_report,
                          json.dumps(bench.rate_report(model)) + "\n")
    return 0


def _cmd_sigma_compare(args) -> int:
    spec = _spec_from_args(args)
    sigmas = [_parse_sigma(tok, args.alpha, args.beta)
              for tok in args.sigma.split(",")]
    report = bench.compare_sigma(spec, args.beta, sigmas,
                                 _int_list(args.n1), mode=args.mode,
                                 radius=args.radius, C=args.C,
                                 n_jobs=_default_jobs())
    sweeps = report.pop("records")
    if args.csv:
        flat = [r for s in sorted(sweeps) for r in sweeps[s]]
        bench.records_to_csv(flat, args.csv)
    _emit(json.dumps(report, indent=2), args.out)
    return 0 if report["ordering_holds"] else 3


def _cmd_trapz(args) -> int:
    rows = [["h", "engine", "closed_form", "engine_minus_closed",
             "lattice_minus_integral", "poisson_bound"]]
    profile = quadrature.FourierDecayProfile(a=1.0, B=math.pi)
    for h in _float_list(args.h):
        n_max = max(8, math.ceil(args.window / h))
        got = quadrature.trapezoid_real_line(lambda x: 1.0 / (1.0 + x * x),
                                             h, n_max,
                                             em_order=args.em_order)
        closed = quadrature.closed_form_I1(h)
        rows.append([_fmt(h), _fmt(got.value), _fmt(closed),
                     _fmt(got.value - closed), _fmt(closed - math.pi),
                     _fmt(quadrature.poisson_error_bound(profile, h))])
    text = "\n".join(",".join(r) for r in rows) + "\n"
    _emit(text, args.out)
    return 0


def _cmd_fourier(args) -> int:
    xi = _float_list(args.xi)
    if args.fn == "runge":
        fit = quadrature.fourier_decay_fit(lambda x: 1.0 / (1.0 + x * x), xi)
        slope, mags = fit.slope, fit.magnitude
        reference = -2.0 * math.pi
    else:
        mags = np.array([abs(quadrature.fourier_transform(
            lambda x: math.exp(-math.pi * x * x), x)) for x in xi])
        slope = float(np.polyfit(np.asarray(xi) ** 2, np.log(mags), 1)[0])
        reference = -math.pi
    rel = abs(slope - reference) / abs(reference)
    report = {"fn": args.fn, "xi": list(xi),
              "magnitudes": [float(m) for m in mags],
              "slope": slope, "reference": reference,
              "rel_dev": rel, "pass": bool(rel <= 0.05)}
    _emit(json.dumps(report, indent=2), args.out)
    return 0


def _boundary_fn(args):
    if args.data == "logdist":
        z0 = _parse_complex(args.z0)
        return lambda z: -np.log(np.abs(z - z0))
    if args.data == "logabs":
        return lambda z: -np.log(np.abs(z))
    return lambda z: np.real(z ** 3)


def _polygon_arg(arg: str) -> laplace.CornerDomain:
    """Accept either a filename or inline JSON [[re,im],...]."""
    if arg.lstrip().startswith("["):
        data = json.loads(arg)
        return laplace.make_polygon([complex(re, im) for re, im in data])
    return laplace.load_polygon(arg)


def _cmd_laplace(args) -> int:
    domain = _polygon_arg(args.polygon)
    sol = laplace.solve_laplace(domain, _boundary_fn(args), args.n1)
    report = {"N1_per_corner": sol.N1_per_corner, "N2": sol.N2,
              "total_degree": sol.total_degree,
              "boundary_error": sol.boundary_error,
              "refined_error": sol.refined_error,
              "fit_residual": sol.fit_residual}
    _emit(json.dumps(report, indent=2), args.out)
    if args.solution:
        atomic_write_text(args.solution,
                          json.dumps(laplace.solution_to_json_dict(sol)) + "\n")
    if args.profile:
        laplace.error_profile_csv(sol, _boundary_fn(args), args.profile)
    return 0


def _cmd_conformal(args) -> int:
    domain = _polygon_arg(args.polygon)
    cmap = laplace.conformal_map(domain, args.n1)
    report = laplace.conformal_checks(cmap, args.n_boundary)
    report["corner_images"] = [[v.real, v.imag]
                               for v in report["corner_images"]]
    report["normalization_shift"] = cmap.normalization_shift
    _emit(json.dumps(report, indent=2), args.out)
    if args.csv:
        pts = laplace._perimeter_points(domain, args.n_boundary)
        imgs = laplace.eval_map(cmap, pts)
        lines = ["z_re,z_im,f_re,f_im"]
        for z, f in zip(pts, imgs):
            lines.append(",".join([_fmt(z.real), _fmt(z.imag),
                                   _fmt(f.real), _fmt(f.imag)]))
        atomic_write_text(args.csv, "\n".join(lines) + "\n")
    return 0


def _add_prototype_flags(p, n1_is_list: bool) -> None:
    p.add_argument("--kind", choices=[POW, POW_LOG], default=POW)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--g", choices=sorted(G_CATALOG), default="one")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--C", type=float, default=None)
    p.add_argument("--mode", choices=[LS_POLY, ANALYTIC_TAIL],
                   default=LS_POLY)
    if n1_is_list:
        p.add_argument("--n1", default="9,16,25,36,49,64",
                       help="comma-separated N1 values")
    else:
        p.add_argument("--n1", type=int, default=36)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lightningpoly",
        description="Pole-clustered rational approximation experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("approx", help="build or load one approximant")
    _add_prototype_flags(p, n1_is_list=False)
    p.add_argument("--sigma", default="opt")
    p.add_argument("--n2", type=int, default=None)
    p.add_argument("--emit", default=None, help="write approximant JSON here")
    p.add_argument("--load", default=None, help="load approximant JSON")
    p.add_argument("--eval", default=None, metavar="Z",
                   help="evaluate at Z (re,im or a+bj)")
    p.set_defaults(handler=_cmd_approx)

    p = sub.add_parser("sweep", help="convergence sweep to CSV")
    _add_prototype_flags(p, n1_is_list=True)
    p.add_argument("--sigma", default="opt")
    p.add_argument("--out", default=None)
    p.add_argument("--fit-report", default=None,
                   help="write rate-fit JSON here")
    p.add_argument("--floor", type=float, default=1e-11)
    p.add_argument("--cap", type=float, default=1e-2)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("sigma-compare", help="error ordering across sigma")
    _add_prototype_flags(p, n1_is_list=True)
    p.add_argument("--sigma", default="0.5opt,opt,1.5opt",
                   help="comma-separated; entries may use the opt suffix")
    p.add_argument("--out", default=None)
    p.add_argument("--csv", default=None, help="write the full table here")
    p.set_defaults(handler=_cmd_sigma_compare)

    p = sub.add_parser("trapz", help="trapezoid-rule table for 1/(1+x^2)")
    p.add_argument("--h", default="1,0.5,0.25")
    p.add_argument("--window", type=float, default=100.0,
                   help="sum out to |x| >= window before tail completion")
    p.add_argument("--em-order", type=int, default=3)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_trapz)

    p = sub.add_parser("fourier", help="transform decay-slope fit")
    p.add_argument("--fn", choices=["runge", "gauss"], default="runge")
    p.add_argument("--xi", default="0.2,0.4,0.6,0.8,1.0")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_fourier)

    p = sub.add_parser("laplace", help="polygon Dirichlet solve")
    p.add_argument("--polygon", required=True,
                   help="vertex file or inline JSON [[re,im],...]")
    p.add_argument("--n1", type=int, default=64)
    p.add_argument("--data", choices=["logdist", "logabs", "re-z3"],
                   default="logdist")
    p.add_argument("--z0", default="3,3", help="source point for logdist")
    p.add_argument("--out", default=None)
    p.add_argument("--solution", default=None,
                   help="write solution JSON here")
    p.add_argument("--profile", default=None,
                   help="write boundary error CSV here")
    p.set_defaults(handler=_cmd_laplace)

    p = sub.add_parser("conformal", help="map polygon to the unit disk")
    p.add_argument("--polygon", required=True,
                   help="vertex file or inline JSON [[re,im],...]")
    p.add_argument("--n1", type=int, default=64)
    p.add_argument("--n-boundary", type=int, default=256)
    p.add_argument("--out", default=None)
    p.add_argument("--csv", default=None,
                   help="write boundary image CSV here")
    p.set_defaults(handler=_cmd_conformal)
    return parser


def run(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (RankError, AccuracyError, PoleProximityError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
