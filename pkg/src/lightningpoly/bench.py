"""Convergence sweeps, rate fits, and the predictive error budget.

The experiments here drive the pole-clustered approximants from
:mod:`.approximant` across ranges of N1 and sigma, fit the observed
root-exponential rates, and compare sigma choices.  Records serialize to
a flat CSV schema so external plotting never needs this package.
"""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .approximant import LS_POLY, build_lp, sigma_opt, sup_error
from .core import PrototypeSpec, kappa_of_beta, make_sector
from .fileio import atomic_write_text

SUB = "sub"
OPT = "opt"
SUPER = "super"

CSV_HEADER = ["alpha", "beta", "sigma", "N1", "N2", "N",
              "sup_err", "argmax_re", "argmax_im", "wall_ms"]


def clustering_constant(beta: float) -> float:
    """Geometry constant of the predictive budget prefactor.

    (sqrt(2)+2)/(sqrt(2)-1) = 8.2426... on proper sectors, and the
    smaller sqrt(2)/(sqrt(2)-1) = 3.4142... when the sector degenerates
    to a segment (beta = 0).
    """
    r2 = math.sqrt(2.0)
    if beta > 0.0:
        return (r2 + 2.0) / (r2 - 1.0)
    return r2 / (r2 - 1.0)


@dataclass(frozen=True)
class ConvergenceRecord:
    """One sweep cell: parameters, measured sup error, and timing.

    N is the total degree of freedom count N1 + N2 + 1.  wall_ms is
    informational only and excluded from determinism comparisons.
    """
    N: int
    N1: int
    N2: int
    sigma: float
    alpha: float
    beta: float
    sup_err: float
    argmax: complex
    wall_ms: float

    def __post_init__(self):
        if self.sup_err < 0.0:
            raise ValueError("sup_err must be nonnegative")
        if self.N != self.N1 + self.N2 + 1:
            raise ValueError("N must equal N1 + N2 + 1")


@dataclass(frozen=True)
class RateModel:
    """OLS fit of ln(sup_err) against sqrt(N), with the predicted slope.

    regime is one of SUB/OPT/SUPER by comparing sigma against
    sigma_opt(alpha, beta) with 1% tolerance.  For the log-weighted
    prototype the algebraic sqrt(N) prefactor is ignored inside the fit
    window; over [1e-11, 1e-2] it shifts the trend by well under a
    percent of the slope.
    """
    slope: float
    intercept: float
    regime: str
    predicted_slope: float
    points_used: int


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def records_to_csv_text(records) -> str:
    """Render records with 17-significant-digit floats.

    That precision round-trips IEEE doubles exactly, so a read-back
    compares bit-equal to the originals.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow([_fmt(r.alpha), _fmt(r.beta), _fmt(r.sigma),
                         r.N1, r.N2, r.N, _fmt(r.sup_err),
                         _fmt(r.argmax.real), _fmt(r.argmax.imag),
                         _fmt(r.wall_ms)])
    return buf.getvalue()


def records_to_csv(records, path: str) -> None:
    """Write records atomically; see :func:`records_to_csv_text`."""
    atomic_write_text(path, records_to_csv_text(records))


def records_from_csv(path: str) -> list[ConvergenceRecord]:
    out = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        for row in reader:
            out.append(ConvergenceRecord(
                N=int(row["N"]), N1=int(row["N1"]), N2=int(row["N2"]),
                sigma=float(row["sigma"]), alpha=float(row["alpha"]),
                beta=float(row["beta"]), sup_err=float(row["sup_err"]),
                argmax=complex(float(row["argmax_re"]),
                               float(row["argmax_im"])),
                wall_ms=float(row["wall_ms"])))
    return out


def default_n2(N1: int) -> int:
    """Polynomial degree paired with N1 in all sweeps: ceil(1.3*sqrt(N1))."""
    return math.ceil(1.3 * math.sqrt(N1))


def _sweep_cell(spec, domain, sigma, n1, mode, C):
    n2 = default_n2(n1)
    t0 = time.perf_counter()
    try:
        approx = build_lp(spec, domain, sigma=sigma, N1=n1, N2=n2,
                          mode=mode, C=C)
        err, argmax = sup_error(approx)
    except Exception as exc:
        exc.args = (f"build failed at N1={n1}: {exc}",)
        raise
    wall_ms = (time.perf_counter() - t0) * 1e3
    return ConvergenceRecord(N=n1 + n2 + 1, N1=n1, N2=n2, sigma=float(sigma),
                             alpha=spec.alpha, beta=domain.beta,
                             sup_err=err, argmax=argmax, wall_ms=wall_ms)


def sweep_prototype(spec: PrototypeSpec, beta: float, sigma, N1_list,
                    mode: str = LS_POLY, radius: float = 1.0,
                    C: float | None = None,
                    n_jobs: int | None = None) -> list[ConvergenceRecord]:
    """Build one approximant per N1 and measure its sup error.

    sigma may be the literal "opt".  Cells are independent; with
    n_jobs > 1 they run on a thread pool, and results are returned in
    N1 order either way.
    """
    n1s = [int(n) for n in N1_list]
    if any(b <= a for a, b in zip(n1s, n1s[1:])):
        raise ValueError("N1_list must be strictly increasing")
    domain = make_sector(beta=beta, radius=radius)
    if isinstance(sigma, str):
        if sigma != "opt":
            raise ValueError(f"unrecognized sigma {sigma!r}")
        sigma = sigma_opt(spec.alpha, beta)
    if n_jobs is not None and n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            futs = [pool.submit(_sweep_cell, spec, domain, sigma, n1, mode, C)
                    for n1 in n1s]
            return [f.result() for f in futs]
    return [_sweep_cell(spec, domain, sigma, n1, mode, C) for n1 in n1s]


def fit_rate(records, err_floor: float = 1e-11,
             err_cap: float = 1e-2) -> RateModel:
    """Least-squares rate fit over the window [err_floor, err_cap].

    Errors below the floor are roundoff-dominated and errors above the
    cap are preasymptotic, so both are excluded.  Needs at least three
    in-window records sharing (alpha, beta, sigma).
    """
    if not records:
        raise ValueError("no records to fit")
    a0, b0, s0 = records[0].alpha, records[0].beta, records[0].sigma
    for r in records:
        if not (math.isclose(r.alpha, a0) and math.isclose(r.beta, b0)
                and math.isclose(r.sigma, s0)):
            raise ValueError("records mix alpha/beta/sigma; fit one sweep")
    window = [r for r in records if err_floor <= r.sup_err <= err_cap]
    if len(window) < 3:
        raise ValueError(
            f"only {len(window)} records inside [{err_floor:g}, {err_cap:g}]; "
            "need at least 3")
    x = np.sqrt([float(r.N) for r in window])
    y = np.log([r.sup_err for r in window])
    slope, intercept = np.polyfit(x, y, 1)

    s_opt = sigma_opt(a0, b0)
    if abs(s0 - s_opt) <= 0.01 * s_opt:
        regime, predicted = OPT, -math.pi * math.sqrt((2.0 - b0) * a0)
    elif s0 < s_opt:
        regime, predicted = SUB, -s0 * a0
    else:
        regime, predicted = SUPER, -(2.0 - b0) * math.pi ** 2 / s0
    return RateModel(slope=float(slope), intercept=float(intercept),
                     regime=regime, predicted_slope=predicted,
                     points_used=len(window))


def rate_report(model: RateModel, rel_tol: float = 0.2) -> dict:
    """JSON-ready summary with a pass flag at the given slope tolerance."""
    ok = abs(model.slope - model.predicted_slope) <= rel_tol * abs(
        model.predicted_slope)
    return {"slope": model.slope, "predicted_slope": model.predicted_slope,
            "regime": model.regime, "points_used": model.points_used,
            "pass": bool(ok)}


def compare_sigma(spec: PrototypeSpec, beta: float, sigma_list, N1_list,
                  mode: str = LS_POLY, radius: float = 1.0,
                  C: float | None = None, err_floor: float = 1e-11,
                  n_jobs: int | None = None) -> dict:
    """Sweep each sigma and check the optimum wins where errors resolve.

    The comparison point is the largest N1 whose sigma_opt error still
    exceeds err_floor; below that everything is roundoff and the report
    comes back inconclusive rather than failed.
    """
    s_opt = sigma_opt(spec.alpha, beta)
    sigmas = [float(s) for s in sigma_list]
    if not any(abs(s - s_opt) <= 1e-9 * s_opt for s in sigmas):
        raise ValueError("sigma_list must contain sigma_opt")
    sweeps = {s: sweep_prototype(spec, beta, s, N1_list, mode=mode,
                                 radius=radius, C=C, n_jobs=n_jobs)
              for s in sigmas}
    opt_records = next(recs for s, recs in sweeps.items()
                       if abs(s - s_opt) <= 1e-9 * s_opt)
    star = None
    for r in opt_records:
        if r.sup_err > err_floor:
            star = r.N1
    if star is None:
        return {"sigma_opt": s_opt, "n1_star": None, "inconclusive": True,
                "ordering_holds": True, "errors_at_star": [],
                "records": sweeps}
    errs = []
    for s in sigmas:
        rec = next(r for r in sweeps[s] if r.N1 == star)
        errs.append({"sigma": s, "sup_err": rec.sup_err})
    e_opt = next(e["sup_err"] for e in errs
                 if abs(e["sigma"] - s_opt) <= 1e-9 * s_opt)
    holds = all(e_opt <= e["sup_err"] * (1.0 + 1e-12) for e in errs)
    return {"sigma_opt": s_opt, "n1_star": star, "inconclusive": False,
            "ordering_holds": holds, "errors_at_star": errs,
            "records": sweeps}


@dataclass(frozen=True)
class ErrorBudget:
    """Predictive envelope pieces for one (alpha, beta, sigma, N1, C).

    truncation_term tracks the analytic tail cut at the window edge;
    quadrature_term tracks the rectangular-rule discretization.  At
    sigma_opt the two exponents balance.  No sharp constant is claimed,
    so comparisons against measurements calibrate one overall factor.
    """
    truncation_term: float
    quadrature_term: float
    prefactor: float

    @property
    def total(self) -> float:
        return self.prefactor * (self.truncation_term + self.quadrature_term)


def lp_error_budget(alpha: float, beta: float, sigma: float, N1: int,
                    C: float = 1.0) -> ErrorBudget:
    """Two competing exponentials plus the geometry prefactor."""
    if alpha <= 0.0 or sigma <= 0.0 or N1 <= 0:
        raise ValueError("alpha, sigma, N1 must be positive")
    root = math.sqrt(N1)
    trunc = math.exp(-alpha * sigma * root)
    quad = 1.0 / math.expm1((2.0 - beta) * math.pi ** 2 * root / sigma)
    pref = (clustering_constant(beta) ** alpha * max(1.0, C ** alpha)
            / kappa_of_beta(beta))
    return ErrorBudget(truncation_term=trunc, quadrature_term=quad,
                       prefactor=pref)
