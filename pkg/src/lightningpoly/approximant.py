"""Lightning-plus-polynomial approximants on sector domains.

The approximant family is

    r(z) = sum_j a_j/(z - p_j) + P(z),

with poles p_j clustered exponentially toward the corner along the
negative real axis and P a low-degree polynomial.  The pole residues come
in closed form from a rectangular-rule discretization of the integral
representation of the prototype; the polynomial is either the exact
regrouped remainder of that discretization (ANALYTIC_TAIL) or a discrete
least-squares fit on the sector boundary (LS_POLY, the default, which
also absorbs the entire multiplier g).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .core import (POW, POW_LOG, PrototypeSpec, SamplePlan, SectorDomain,
                   chebyshev_nodes, check_slit_plane, lagrange_eval,
                   prototype_eval)
from .errors import PoleProximityError
from .fileio import atomic_write_text
from .lsq import OrthoBasis, build_ortho_basis, ls_solve

LS_POLY = "ls_poly"
ANALYTIC_TAIL = "analytic_tail"

#: Default left endpoint of the interpolation-node interval [delta, delta+1].
DELTA_DEFAULT = (math.sqrt(2.0) - 1.0) / 2.0

_FORMAT_NAME = "lightningpoly-approximant"
_FORMAT_VERSION = 1


def sigma_opt(alpha: float, beta: float) -> float:
    """Optimal clustering strength pi*sqrt(2 - beta)/sqrt(alpha)."""
    if not alpha > 0.0:
        raise ValueError("alpha must be positive")
    if not 0.0 <= beta < 2.0:
        raise ValueError("beta must lie in [0, 2)")
    return math.pi * math.sqrt(2.0 - beta) / math.sqrt(alpha)


@dataclass(frozen=True, eq=False)
class PoleSet:
    """Exponentially clustered poles p_j = -C*exp(-sigma*j/sqrt(N1))."""

    C: float
    sigma: float
    N1: int
    poles: np.ndarray


def cluster_poles(C: float, sigma: float, N1: int) -> PoleSet:
    """The N1+1 clustered poles, outermost (-C) first.

    Magnitudes decrease geometrically from C to C*exp(-sigma*sqrt(N1)).
    """
    if not C > 0.0:
        raise ValueError("C must be positive")
    if not sigma > 0.0:
        raise ValueError("sigma must be positive")
    if N1 < 1:
        raise ValueError("N1 must be at least 1")
    j = np.arange(N1 + 1)
    poles = -C * np.exp(-sigma * j / math.sqrt(N1))
    return PoleSet(C=C, sigma=sigma, N1=N1, poles=poles)


@dataclass(frozen=True, eq=False)
class DiscretizationPlan:
    """Rectangular-rule discretization of the transformed representation.

    h is the step, T = N1*h the inner window depth, kappa the tail-window
    ratio alpha/(ell+1-alpha), Nt = ceil((kappa+1)*N1) the total number of
    steps, and nodes the ell Chebyshev interpolation nodes on
    [delta, delta+1].
    """

    kind: str
    alpha: float
    sigma: float
    N1: int
    C: float
    delta: float
    h: float
    T: float
    kappa: float
    ell: int
    Nt: int
    nodes: np.ndarray


def make_plan(kind: str, alpha: float, sigma: float, N1: int,
              C: float = 1.0, delta: float = DELTA_DEFAULT) -> DiscretizationPlan:
    """Choose step, window, and nodes for the rectangular-rule sum."""
    if kind not in (POW, POW_LOG):
        raise ValueError(f"unknown kind {kind!r}")
    if not alpha > 0.0:
        raise ValueError("alpha must be positive")
    if not sigma > 0.0:
        raise ValueError("sigma must be positive")
    if N1 < 1:
        raise ValueError("N1 must be at least 1")
    if not C > 0.0:
        raise ValueError("C must be positive")
    ell = math.floor(alpha) if kind == POW else math.ceil(alpha)
    if ell == alpha and kind == POW:
        # Integer exponent: the representation prefactor sin(alpha*pi)
        # vanishes; the plan is still well formed (used by tests).
        pass
    kappa = alpha / (ell + 1 - alpha)
    h = sigma * alpha / math.sqrt(N1)
    T = N1 * h
    Nt = math.ceil((kappa + 1.0) * N1)
    return DiscretizationPlan(kind=kind, alpha=alpha, sigma=sigma, N1=N1,
                              C=C, delta=delta, h=h, T=T, kappa=kappa,
                              ell=ell, Nt=Nt,
                              nodes=chebyshev_nodes(ell, delta))


def _plan_abscissae(plan: DiscretizationPlan) -> np.ndarray:
    """The Nt+1 rectangle abscissae t_j = j*h - T, j = 0..Nt."""
    return plan.h * np.arange(plan.Nt + 1) - plan.T


def rect_sum(plan: DiscretizationPlan, z, weight_power: int = 0):
    """Raw rectangular-rule sum r^(l)(z) of the transformed integrand.

    r^(l)(z) = h * sum_j z*C^alpha*t_j^l*e^(t_j) / (C*e^(t_j/alpha) + z)
               * prod_k (z - s_k)/(C*e^(t_j/alpha) + s_k),

    over all Nt+1 abscissae (inner window and tail).  Vectorized over z.
    """
    z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
    t = _plan_abscissae(plan)
    y = plan.C * np.exp(t / plan.alpha)          # |pole| per abscissa
    w = plan.h * plan.C ** plan.alpha * np.exp(t)
    if weight_power:
        w = w * t ** weight_power
    zc = z_arr[:, None]
    terms = zc / (y[None, :] + zc)
    for s in plan.nodes:
        terms = terms * (zc - s) / (y[None, :] + s)
    out = terms @ w
    return out[0] if np.ndim(z) == 0 else out


def _log_weights(plan: DiscretizationPlan):
    """Prefactors (c1, c0) with value = c1*r1 + c0*r0 + Lagrange for pow_log."""
    a = plan.alpha
    sgn = -1.0 if plan.ell % 2 else 1.0
    c1 = math.sin(a * math.pi) / (sgn * a * a * math.pi)
    c0 = (math.sin(a * math.pi) * math.log(plan.C) / (sgn * a * math.pi)
          + math.cos(a * math.pi) / (sgn * a))
    return c1, c0


def quadrature_sum(plan: DiscretizationPlan, spec: PrototypeSpec, z):
    """Assembled rectangular-rule approximation of the bare prototype.

    Combines the weighted sums r^(l) with their analytic prefactors and
    the Lagrange polynomial correction.  The multiplier g is not applied;
    this is the construction oracle the pole/residue regrouping must match
    identically.
    """
    if spec.kind != plan.kind or spec.alpha != plan.alpha:
        raise ValueError("plan and spec disagree on kind/alpha")
    check_slit_plane(z)
    a = plan.alpha
    sgn = -1.0 if plan.ell % 2 else 1.0
    nodes = plan.nodes
    z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
    if spec.kind == POW:
        pref = math.sin(a * math.pi) / (sgn * a * math.pi)
        val = pref * rect_sum(plan, z_arr, 0)
        if plan.ell:
            val = val + z_arr * lagrange_eval(nodes, nodes ** (a - 1.0), z_arr)
    else:
        c1, c0 = _log_weights(plan)
        val = c1 * rect_sum(plan, z_arr, 1) + c0 * rect_sum(plan, z_arr, 0)
        if plan.ell:
            val = val + z_arr * lagrange_eval(
                nodes, nodes ** (a - 1.0) * np.log(nodes), z_arr)
    return val[0] if np.ndim(z) == 0 else val


def analytic_residues_pow(plan: DiscretizationPlan, poles) -> np.ndarray:
    """Residues h*p*|p|^alpha*sin(alpha*pi)/(alpha*pi), per pole value.

    Valid for any pole of the family (inner or tail); the formula only
    uses the pole location, so it is independent of index orientation.
    """
    p = np.asarray(poles, dtype=float)
    a = plan.alpha
    return plan.h * p * np.abs(p) ** a * math.sin(a * math.pi) / (a * math.pi)


def analytic_residues_pow_log(plan: DiscretizationPlan, poles) -> np.ndarray:
    """Residues for the z^alpha*log(z) prototype, per pole value.

    h*p*|p|^alpha * [ t*sin(alpha*pi)/(alpha^2*pi)
                      + sin(alpha*pi)*log(C)/(alpha*pi)
                      + cos(alpha*pi)/alpha ],   t = alpha*log(|p|/C).

    t recovers the rectangle abscissa of the pole without reference to an
    index: the outermost inner pole (|p| = C) gets t = 0, the innermost
    gets t = -T.
    """
    p = np.asarray(poles, dtype=float)
    a = plan.alpha
    t = a * np.log(np.abs(p) / plan.C)
    bracket = (t * math.sin(a * math.pi) / (a * a * math.pi)
               + math.sin(a * math.pi) * math.log(plan.C) / (a * math.pi)
               + math.cos(a * math.pi) / a)
    return plan.h * p * np.abs(p) ** a * bracket


@dataclass(frozen=True, eq=False)
class LightningApproximant:
    """A built approximant: clustered poles + residues + polynomial part.

    ``poly_basis``/``poly_coeffs`` hold the polynomial in the
    orthogonalized fitting basis (LS_POLY); ``poly_mono`` holds ascending
    monomial coefficients (always populated; the evaluation path uses the
    basis when present).

    ANALYTIC_TAIL additionally carries the discretization tail: poles of
    magnitude greater than C whose terms are kept in the product form

        tail_residues[j] * z * prod_k (z - interp_nodes[k]) / (z - tail_poles[j]).

    Folding these into simple-pole residues is exact algebra but
    numerically catastrophic (the pieces grow like exp(t*(1+1/alpha)) and
    cancel), so the stable product coefficients are what is stored.
    """

    spec: PrototypeSpec
    domain: SectorDomain
    mode: str
    C: float
    sigma: float
    N1: int
    N2: int
    delta: float
    poles: np.ndarray
    residues: np.ndarray
    poly_mono: np.ndarray
    poly_basis: OrthoBasis | None = None
    poly_coeffs: np.ndarray | None = None
    tail_poles: np.ndarray | None = None
    tail_residues: np.ndarray | None = None
    interp_nodes: np.ndarray | None = None
    fit_residual: float | None = None

    @property
    def n_total(self) -> int:
        """Convergence-count parameter N = N1 + N2 + 1."""
        return self.N1 + self.N2 + 1


def _poly_add(acc: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    n = max(acc.size, coeffs.size)
    out = np.zeros(n, dtype=complex)
    out[:acc.size] += acc
    out[:coeffs.size] += coeffs
    return out


def _deflate(coeffs: np.ndarray, root: float) -> np.ndarray:
    """(poly(z) - poly(root))/(z - root) for ascending coeffs, by Horner."""
    n = coeffs.size
    if n <= 1:
        return np.zeros(0, dtype=coeffs.dtype)
    out = np.empty(n - 1, dtype=coeffs.dtype)
    out[-1] = coeffs[-1]
    for k in range(n - 2, 0, -1):
        out[k - 1] = coeffs[k] + root * out[k]
    return out


def _lagrange_poly(nodes: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Ascending coefficients of the Lagrange interpolant."""
    if nodes.size == 0:
        return np.zeros(1, dtype=complex)
    acc = np.zeros(nodes.size, dtype=complex)
    for k in range(nodes.size):
        others = np.delete(nodes, k)
        basis = npoly.polyfromroots(others) / np.prod(nodes[k] - others) \
            if others.size else np.ones(1)
        acc = _poly_add(acc, values[k] * basis)
    return acc


def _build_analytic_tail(spec, domain, plan, N2):
    """Exact regrouping of the rectangular-rule sum.

    Inner rectangles (t_j <= 0, pole magnitudes <= C) split exactly as

        z*Q_j(z)/(z - p_j) = Q_j(p_j)*p_j/(z - p_j) + Q_j(z)
                             + p_j*(Q_j(z) - Q_j(p_j))/(z - p_j),

    with Q_j(p_j) = (-1)^ell by the node-product reflection, yielding the
    analytic residues and a degree-ell polynomial.  Tail rectangles stay
    in product form with log-scaled coefficients (see the dataclass note).
    """
    a = plan.alpha
    sgn = -1.0 if plan.ell % 2 else 1.0
    nodes = plan.nodes
    t = _plan_abscissae(plan)
    y = plan.C * np.exp(t / a)
    poles = -y
    inner = t <= 0.0
    n_inner = int(np.count_nonzero(inner))

    # Per-l prefactors folded into a single affine weight in t.
    if spec.kind == POW:
        c1, c0 = 0.0, math.sin(a * math.pi) / (sgn * a * math.pi)
        lag_vals = nodes ** (a - 1.0) if plan.ell else np.zeros(0)
    else:
        c1, c0 = _log_weights(plan)
        lag_vals = nodes ** (a - 1.0) * np.log(nodes) if plan.ell else np.zeros(0)
    affine = c1 * t + c0

    # Inner part: plain weights are bounded (t <= 0), regroup directly.
    w_in = plan.h * plan.C ** a * np.exp(t[inner]) * affine[inner]
    res_in = sgn * w_in * poles[inner]
    numer = npoly.polyfromroots(plan.nodes) if plan.ell else np.ones(1)
    poly = np.zeros(max(plan.ell + 1, 1), dtype=complex)
    for j in range(n_inner):
        p = poles[j]
        denom = np.prod(plan.nodes - p) if plan.ell else 1.0
        q = numer / denom
        contrib = q.copy()
        qq = q.copy()
        qq[0] -= sgn
        dpoly = _deflate(qq, p)
        if dpoly.size:
            contrib = _poly_add(contrib, p * dpoly)
        poly = _poly_add(poly, w_in[j] * contrib)
    if plan.ell:
        lag = _lagrange_poly(nodes, lag_vals.astype(complex))
        poly = _poly_add(poly, np.concatenate(([0.0 + 0.0j], lag)))

    # Tail part: w_j / prod(s_k - p_j) computed through logarithms.
    t_tail = t[~inner]
    y_tail = y[~inner]
    log_prod = np.zeros_like(t_tail)
    for s in plan.nodes:
        log_prod += np.log(s + y_tail)
    tail_coef = (plan.h * plan.C ** a * affine[~inner]
                 * np.exp(t_tail - log_prod))

    # Inner poles ordered outermost first, matching cluster_poles.
    return LightningApproximant(
        spec=spec, domain=domain, mode=ANALYTIC_TAIL, C=plan.C,
        sigma=plan.sigma, N1=plan.N1, N2=N2, delta=plan.delta,
        poles=poles[inner][::-1].copy(), residues=res_in[::-1].copy(),
        poly_mono=poly, tail_poles=poles[~inner].copy(),
        tail_residues=tail_coef, interp_nodes=plan.nodes.copy())


def fit_sample_points(domain: SectorDomain, C: float, sigma: float,
                      N1: int, N2: int) -> np.ndarray:
    """Boundary samples for the least-squares polynomial fit.

    Six points per pole-magnitude scale along each boundary ray, running
    from the outer radius down to two scales below the innermost pole,
    plus 2*N2 arc points (beta > 0) and the corner point z = 0.  The set
    is closed under conjugation.
    """
    step = sigma / (6.0 * math.sqrt(N1))
    depth = math.log(domain.radius / C) + sigma * math.sqrt(N1) + 2.0 * sigma / math.sqrt(N1)
    n_steps = max(int(math.ceil(depth / step)), 12)
    radii = domain.radius * np.exp(-step * np.arange(n_steps + 1))
    pts = [np.array([0.0 + 0.0j])]
    if domain.beta == 0:
        pts.append(radii.astype(complex))
    else:
        ray = np.exp(1j * domain.half_angle)
        pts.append(radii * ray)
        pts.append(radii * ray.conjugate())
        n_arc = max(2 * N2, 2)
        angles = np.linspace(-domain.half_angle, domain.half_angle, n_arc + 2)[1:-1]
        pts.append(domain.radius * np.exp(1j * angles))
    return np.concatenate(pts)


def _lightning_part(z: np.ndarray, poles: np.ndarray,
                    residues: np.ndarray) -> np.ndarray:
    if poles.size == 0:
        return np.zeros(z.shape, dtype=complex)
    return (1.0 / (z[:, None] - poles[None, :])) @ residues.astype(complex)


def build_lp(spec: PrototypeSpec, domain: SectorDomain, sigma,
             N1: int, N2: int | None = None, mode: str = LS_POLY,
             C: float | None = None,
             delta: float = DELTA_DEFAULT) -> LightningApproximant:
    """Build a lightning-plus-polynomial approximant of the prototype.

    Parameters
    ----------
    sigma : float or "opt"
        Clustering strength; the string ``"opt"`` selects
        sigma_opt(alpha, beta).
    N1 : int
        Pole-count parameter (N1 + 1 clustered poles).
    N2 : int, optional
        Polynomial degree; default ceil(1.3*sqrt(N1)).
    mode : str
        LS_POLY (default) fixes the residues analytically and fits the
        polynomial by boundary least squares, absorbing the Lagrange
        term, the discretization tail, and the multiplier g.
        ANALYTIC_TAIL keeps the tail poles explicitly and uses the exact
        regrouped polynomial (g must be "one").
    C : float, optional
        Outermost pole magnitude; default: the sector radius.

    An integer alpha with the plain power kind makes every residue vanish
    (the representation prefactor is sin(alpha*pi)); the approximant then
    reduces to its polynomial part.
    """
    if sigma == "opt":
        sigma = sigma_opt(spec.alpha, domain.beta)
    sigma = float(sigma)
    if C is None:
        C = domain.radius
    if N2 is None:
        N2 = math.ceil(1.3 * math.sqrt(N1))
    if N2 < 0:
        raise ValueError("N2 must be nonnegative")
    plan = make_plan(spec.kind, spec.alpha, sigma, N1, C=C, delta=delta)
    if mode == ANALYTIC_TAIL:
        if not (isinstance(spec.g, str) and spec.g == "one"):
            raise ValueError("ANALYTIC_TAIL supports only the trivial "
                             "multiplier g='one'")
        return _build_analytic_tail(spec, domain, plan, N2)
    if mode != LS_POLY:
        raise ValueError(f"unknown mode {mode!r}")

    integer_pow = spec.kind == POW and float(spec.alpha).is_integer()
    if integer_pow:
        poles = np.zeros(0)
        residues = np.zeros(0)
    else:
        poles = cluster_poles(C, sigma, N1).poles
        if spec.kind == POW:
            residues = analytic_residues_pow(plan, poles)
        else:
            residues = analytic_residues_pow_log(plan, poles)
        g_at_poles = spec.g_callable()(poles.astype(complex))
        residues = (residues * g_at_poles).real

    samples = fit_sample_points(domain, C, sigma, N1, N2)
    target = prototype_eval(spec, samples)
    resid = target - _lightning_part(samples, poles, residues)
    basis = build_ortho_basis(samples, N2, center=0.0, scale=domain.radius,
                              force_real_recurrence=True)
    cols = basis.columns
    A = np.vstack([cols.real, cols.imag])
    b = np.concatenate([resid.real, resid.imag])
    sol = ls_solve(A, b)
    mono = basis.monomial_coeffs(sol.coeffs)
    return LightningApproximant(
        spec=spec, domain=domain, mode=LS_POLY, C=C, sigma=sigma, N1=N1,
        N2=N2, delta=delta, poles=poles, residues=residues,
        poly_mono=mono, poly_basis=basis, poly_coeffs=sol.coeffs,
        fit_residual=sol.residual_norm)


def eval_approximant(approx: LightningApproximant, z):
    """Evaluate the approximant at z (scalar or ndarray).

    Raises PoleProximityError if a point sits within 1e-14*|p| of a pole.
    """
    z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
    for pole_arr in (approx.poles, approx.tail_poles):
        if pole_arr is None or pole_arr.size == 0:
            continue
        dist = np.abs(z_arr[:, None] - pole_arr[None, :])
        if np.any(dist < 1e-14 * np.abs(pole_arr)[None, :]):
            raise PoleProximityError("evaluation point too close to a pole")
    val = _lightning_part(z_arr, approx.poles, approx.residues)
    if approx.tail_poles is not None and approx.tail_poles.size:
        # Tail rectangles in product form: the node product is shared, so
        # tail(z) = z * prod_k (z - s_k) * sum_j coef_j / (z - p_j).
        tail = np.sum(approx.tail_residues[None, :]
                      / (z_arr[:, None] - approx.tail_poles[None, :]), axis=1)
        if approx.interp_nodes is not None and approx.interp_nodes.size:
            tail *= np.prod(z_arr[:, None] - approx.interp_nodes[None, :],
                            axis=1)
        val += z_arr * tail
    if approx.poly_basis is not None:
        val += approx.poly_basis.eval_columns(z_arr) @ approx.poly_coeffs
    else:
        val += npoly.polyval(z_arr, approx.poly_mono)
    return val[0] if np.ndim(z) == 0 else val


def sup_error(approx: LightningApproximant,
              plan: SamplePlan | None = None) -> tuple[float, complex]:
    """Max |approximant - prototype| over a sample plan, with argmax.

    The default plan is the standard sector sampling of the approximant's
    domain.
    """
    from .core import sample_sector
    if plan is None:
        plan = sample_sector(approx.domain)
    errs = np.abs(eval_approximant(approx, plan.points)
                  - prototype_eval(approx.spec, plan.points))
    k = int(np.argmax(errs))
    return float(errs[k]), complex(plan.points[k])


def _pairs(arr) -> list:
    return [[float(v.real), float(v.imag)] for v in np.asarray(arr, dtype=complex)]


def _unpairs(pairs) -> np.ndarray:
    return np.array([complex(re, im) for re, im in pairs], dtype=complex)


def to_json_dict(approx: LightningApproximant) -> dict:
    """Serialize to a plain dict with a fixed field order.

    Floats rely on repr round-tripping, so reloading reproduces the exact
    binary values.  Callable multipliers cannot be serialized.
    """
    if not isinstance(approx.spec.g, str):
        raise ValueError("cannot serialize a callable multiplier g")
    d = {
        "format": _FORMAT_NAME,
        "version": _FORMAT_VERSION,
        "mode": approx.mode,
        "kind": approx.spec.kind,
        "alpha": approx.spec.alpha,
        "g": approx.spec.g,
        "beta": approx.domain.beta,
        "radius": approx.domain.radius,
        "C": approx.C,
        "sigma": approx.sigma,
        "N1": approx.N1,
        "N2": approx.N2,
        "delta": approx.delta,
        "poles": _pairs(approx.poles),
        "residues": _pairs(approx.residues),
        "tail_poles": _pairs(approx.tail_poles) if approx.tail_poles is not None else None,
        "tail_residues": _pairs(approx.tail_residues) if approx.tail_residues is not None else None,
        "interp_nodes": ([float(s) for s in approx.interp_nodes]
                         if approx.interp_nodes is not None else None),
        "poly_monomial": _pairs(approx.poly_mono),
    }
    if approx.poly_basis is not None:
        b = approx.poly_basis
        d["poly_basis"] = {
            "degree": b.degree,
            "center": [b.center.real, b.center.imag],
            "scale": b.scale,
            "recurrence": [_pairs(row) for row in b.recurrence],
            "coeffs": [float(c) for c in approx.poly_coeffs],
        }
    else:
        d["poly_basis"] = None
    return d


def from_json_dict(d: dict) -> LightningApproximant:
    """Rebuild an approximant from :func:`to_json_dict` output."""
    if d.get("format") != _FORMAT_NAME:
        raise ValueError(f"not a {_FORMAT_NAME} document")
    if d.get("version") != _FORMAT_VERSION:
        raise ValueError(f"unsupported format version {d.get('version')}")
    spec = PrototypeSpec(kind=d["kind"], alpha=d["alpha"], g=d["g"])
    domain = SectorDomain(beta=d["beta"], radius=d["radius"])
    basis = None
    coeffs = None
    if d["poly_basis"] is not None:
        pb = d["poly_basis"]
        rec = np.array([[complex(re, im) for re, im in row]
                        for row in pb["recurrence"]], dtype=complex)
        rec = rec.reshape(pb["degree"] + 1, pb["degree"])
        basis = OrthoBasis(degree=pb["degree"], recurrence=rec,
                           sample_points=np.zeros(0, dtype=complex),
                           center=complex(*pb["center"]), scale=pb["scale"])
        coeffs = np.array(pb["coeffs"], dtype=float)
    tp = d["tail_poles"]
    tr = d["tail_residues"]
    nodes = d.get("interp_nodes")
    return LightningApproximant(
        spec=spec, domain=domain, mode=d["mode"], C=d["C"], sigma=d["sigma"],
        N1=d["N1"], N2=d["N2"], delta=d["delta"],
        poles=_unpairs(d["poles"]).real if d["poles"] else np.zeros(0),
        residues=_unpairs(d["residues"]).real if d["residues"] else np.zeros(0),
        poly_mono=_unpairs(d["poly_monomial"]),
        poly_basis=basis, poly_coeffs=coeffs,
        tail_poles=_unpairs(tp).real if tp else None,
        tail_residues=_unpairs(tr).real if tr else None,
        interp_nodes=np.array(nodes, dtype=float) if nodes else None)


def save_approximant(approx: LightningApproximant, path: str) -> None:
    """Write the JSON serialization atomically (temp file + rename)."""
    payload = json.dumps(to_json_dict(approx), separators=(",", ":"))
    atomic_write_text(path, payload + "\n")


def load_approximant(path: str) -> LightningApproximant:
    with open(path) as fh:
        return from_json_dict(json.load(fh))
