"""Integral representations, trapezoid summation, and Poisson error bounds.

The integral representations express z**alpha and z**alpha*log(z) as
absolutely convergent contour integrals plus a Lagrange correction; they
are exact, so an adaptive quadrature of them provides an oracle that is
independent of any rational-approximation construction.

The trapezoid engine sums h*f(n*h) over a finite window and completes both
tails with integrals and Euler-Maclaurin derivative corrections; the two
rational closed forms and the band-limited sinc family give exact values
to test against, and the Poisson-summation bound predicts the decay of the
trapezoid error in 1/h.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .core import lagrange_eval
from .errors import AccuracyError, BranchCutError

_TWO_PI = 2.0 * math.pi

# Central finite-difference stencils (offset -> coefficient / h**order) of
# order-4 accuracy for derivatives 1, 3, 5 and order-2 for derivative 7.
_STENCILS = {
    1: ((-2, -1, 1, 2), (1 / 12, -2 / 3, 2 / 3, -1 / 12)),
    3: ((-3, -2, -1, 1, 2, 3), (1 / 8, -1.0, 13 / 8, -13 / 8, 1.0, -1 / 8)),
    5: ((-4, -3, -2, -1, 1, 2, 3, 4),
        (1 / 6, -3 / 2, 13 / 3, -29 / 6, 29 / 6, -13 / 3, 3 / 2, -1 / 6)),
    7: ((-4, -3, -2, -1, 1, 2, 3, 4),
        (-1 / 2, 3.0, -7.0, 7.0, -7.0, 7.0, -3.0, 1 / 2)),
}


def _fd_derivative(f: Callable, x: float, order: int, h: float) -> float:
    offsets, coeffs = _STENCILS[order]
    return sum(c * f(x + k * h) for k, c in zip(offsets, coeffs)) / h ** order


def _check_rep_args(z: complex, alpha: float, ell: int, nodes) -> np.ndarray:
    nodes = np.asarray(nodes, dtype=float)
    if nodes.ndim != 1 or nodes.size != ell:
        raise ValueError(f"expected {ell} nodes, got shape {nodes.shape}")
    if not alpha > 0.0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if ell == 0:
        if not alpha < 1.0:
            raise ValueError("ell = 0 requires 0 < alpha < 1")
    else:
        if ell < math.floor(alpha):
            raise ValueError(f"need ell >= floor(alpha) = {math.floor(alpha)}")
        if not alpha < ell + 1:
            raise ValueError("need alpha < ell + 1 for integrability")
        if np.any(nodes <= 0.0):
            raise ValueError("nodes must be positive")
    if z.real < 0.0 and z.imag == 0.0:
        raise BranchCutError("z on the negative real axis")
    return nodes


def _rep_line_integral(z: complex, alpha: float, ell: int,
                       nodes: np.ndarray, log_power: int) -> complex:
    """Integral of z*exp(alpha*t)*t**log_power / (e^t + z) * prod[(z-s)/(e^t+s)] dt.

    This is the y = e^t substitution of the Mellin-type integrand; the
    integrand decays like exp(alpha*t) to the left and
    exp(-(ell+1-alpha)*t) to the right.  The window is chosen from those
    envelopes and verified a posteriori by an endpoint tail estimate.
    """
    rate_l = alpha
    rate_r = ell + 1 - alpha
    log_az = math.log(abs(z))
    t_lo = min(0.0, log_az) - 46.0 / rate_l
    t_hi = max(5.0, 46.0 / rate_r + 5.0)

    def integrand(t):
        y = np.exp(t)
        v = z * np.exp(alpha * t) / (y + z)
        for s in nodes:
            v = v * (z - s) / (y + s)
        if log_power:
            v = v * t ** log_power
        return v

    tail = math.inf
    for _ in range(4):
        breaks = sorted({t for t in (log_az, 0.0) if t_lo < t < t_hi})
        with warnings.catch_warnings():
            # The 1e-13 relative target sits at QUADPACK's roundoff
            # floor; accuracy is certified by the tail check below, not
            # by the library's internal estimate.
            warnings.simplefilter("ignore", IntegrationWarning)
            val, _ = quad(integrand, t_lo, t_hi, complex_func=True,
                          points=breaks or None, limit=400,
                          epsabs=1e-300, epsrel=1e-13)
        # Beyond the window the integrand is essentially a pure exponential,
        # so endpoint magnitude / rate estimates the omitted mass.
        tail = (abs(integrand(t_lo)) / rate_l + abs(integrand(t_hi)) / rate_r)
        if tail <= max(1e-14 * abs(val), 1e-280):
            return val
        t_lo -= 20.0 / rate_l
        t_hi += 20.0 / rate_r
    raise AccuracyError("integral representation window did not converge",
                        achieved=tail)


def integral_rep_pow(z: complex, alpha: float, ell: int,
                     nodes: Sequence[float] = ()) -> complex:
    """z**alpha via its contour-integral representation (an oracle).

    Parameters
    ----------
    z : complex
        Point in the slit plane (not on the open negative real axis).
    alpha : float
        Exponent.  With ell = 0, must satisfy 0 < alpha < 1; otherwise
        floor(alpha) <= ell and alpha < ell + 1.
    ell : int
        Number of interpolation nodes.
    nodes : sequence of float
        ell positive pairwise-distinct interpolation nodes.

    Returns the representation value; agreement with the principal branch
    of z**alpha is a theorem, so the only error is quadrature error.
    """
    z = complex(z)
    nodes = _check_rep_args(z, alpha, ell, nodes)
    if z == 0:
        return 0.0 + 0.0j
    sgn = -1.0 if ell % 2 else 1.0
    integral = _rep_line_integral(z, alpha, ell, nodes, 0)
    lag = lagrange_eval(nodes, nodes ** (alpha - 1.0), z) if ell else 0.0
    return math.sin(alpha * math.pi) / (sgn * math.pi) * integral + z * lag


def integral_rep_pow_log(z: complex, alpha: float, ell: int,
                         nodes: Sequence[float] = ()) -> complex:
    """z**alpha*log(z) via its contour-integral representation.

    Same argument contract as :func:`integral_rep_pow` except z must be
    nonzero; an extra cosine-weighted plain integral appears alongside the
    log-weighted one.
    """
    z = complex(z)
    nodes = _check_rep_args(z, alpha, ell, nodes)
    if z == 0:
        raise ValueError("z = 0 is excluded for the log representation")
    sgn = -1.0 if ell % 2 else 1.0
    i_log = _rep_line_integral(z, alpha, ell, nodes, 1)
    i_plain = _rep_line_integral(z, alpha, ell, nodes, 0)
    if ell:
        lag = lagrange_eval(nodes, nodes ** (alpha - 1.0) * np.log(nodes), z)
    else:
        lag = 0.0
    return (math.sin(alpha * math.pi) / (sgn * math.pi) * i_log
            + math.cos(alpha * math.pi) / sgn * i_plain + z * lag)


@dataclass(frozen=True)
class TrapezoidResult:
    """Output of :func:`trapezoid_real_line`."""

    value: float
    h: float
    n_max: int
    tail_estimate: float


def _eval_grid(f: Callable, x: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(f(x), dtype=float)
        if vals.shape == x.shape:
            return vals
    except (TypeError, ValueError):
        pass
    return np.array([f(xi) for xi in x], dtype=float)


# Euler-Maclaurin correction coefficients -B_{2j}/(2j)! for j = 1..4.
_EM_COEFFS = (-1 / 12, 1 / 720, -1 / 30240, 1 / 1209600)
_EM_ORDERS = (1, 3, 5, 7)


def _tail_beyond(f: Callable, x_cut: float, h: float, em_order: int):
    """h*sum_{n >= m+1} f(n*h) for x_cut = m*h, via integral + EM corrections.

    Returns (tail_value, estimate_of_first_omitted_term).
    """
    integral, int_err = quad(f, x_cut, np.inf, limit=300,
                             epsabs=1e-15, epsrel=1e-12)
    value = integral - 0.5 * h * f(x_cut)
    for j in range(em_order):
        d = _fd_derivative(f, x_cut, _EM_ORDERS[j], h)
        value += _EM_COEFFS[j] * h ** (_EM_ORDERS[j] + 1) * d
    if em_order < len(_EM_COEFFS):
        d_next = _fd_derivative(f, x_cut, _EM_ORDERS[em_order], h)
        omitted = abs(_EM_COEFFS[em_order] * h ** (_EM_ORDERS[em_order] + 1) * d_next)
    else:
        omitted = abs(_EM_COEFFS[-1] * h ** 8 *
                      _fd_derivative(f, x_cut, 7, h)) * h * h
    return value, omitted + abs(int_err)


def trapezoid_real_line(f: Callable, h: float, n_max: int,
                        em_order: int = 3) -> TrapezoidResult:
    """Approximate h*sum_{n in Z} f(n*h) (the trapezoid value of int f).

    The window |n| <= n_max is summed directly; each tail is completed by
    the integral of f beyond the cut plus Euler-Maclaurin derivative
    corrections of order ``em_order`` (0 to 4 terms), with derivatives
    taken by central finite differences on the grid spacing.  f must be
    real-valued with algebraic (order > 1) or faster decay.
    """
    if not h > 0.0:
        raise ValueError("h must be positive")
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if not 0 <= em_order <= 4:
        raise ValueError("em_order must lie in 0..4")
    x = h * np.arange(-n_max, n_max + 1)
    core = h * float(np.sum(_eval_grid(f, x)))
    x_cut = n_max * h
    right, est_r = _tail_beyond(f, x_cut, h, em_order)
    left, est_l = _tail_beyond(lambda t: f(-t), x_cut, h, em_order)
    return TrapezoidResult(value=core + right + left, h=h, n_max=n_max,
                           tail_estimate=est_r + est_l)


def closed_form_I1(h: float) -> float:
    """Trapezoid value of int 1/(1+x^2) dx at spacing h: pi*coth(pi/h)."""
    if not h > 0.0:
        raise ValueError("h must be positive")
    return math.pi / math.tanh(math.pi / h)


def closed_form_E1(h: float) -> float:
    """Trapezoid error int - trapezoid for 1/(1+x^2): -2*pi/(e^(2*pi/h)-1)."""
    if not h > 0.0:
        raise ValueError("h must be positive")
    return -2.0 * math.pi / math.expm1(_TWO_PI / h)


def closed_form_I2(h: float) -> float:
    """Trapezoid value for 1/(1+x^2)^2 at spacing h.

    Equals (pi^2/(2h))*(coth(pi/h)^2 - 1) + (pi/2)*coth(pi/h); the first
    piece comes from the double pole, the second is the h -> 0 limit pi/2.
    """
    if not h > 0.0:
        raise ValueError("h must be positive")
    c = 1.0 / math.tanh(math.pi / h)
    return math.pi ** 2 / (2.0 * h) * (c * c - 1.0) + 0.5 * math.pi * c


def closed_form_E2(h: float) -> float:
    """Trapezoid error for 1/(1+x^2)^2, written in a cancellation-free form.

    E2(h) = -(1/h)/(e^(2pi/h)-1) * (2*pi^2*e^(2pi/h)/(e^(2pi/h)-1) + pi*h).
    """
    if not h > 0.0:
        raise ValueError("h must be positive")
    em = math.expm1(_TWO_PI / h)
    return -(1.0 / h) / em * (2.0 * math.pi ** 2 * (em + 1.0) / em + math.pi * h)


def closed_form_sinc(h: float) -> float:
    """Trapezoid value of the band-limited f(x) = sin(2*pi*x)/(2*pi*x).

    Exactly 1/2 for 0 < h < 1 (all aliases fall outside the transform's
    support), h at positive integers (edge aliases contribute), and
    1/2 + floor(h) in between.
    """
    if not h > 0.0:
        raise ValueError("h must be positive")
    if h < 1.0:
        return 0.5
    if h == math.floor(h):
        return float(h)
    return 0.5 + math.floor(h)


@dataclass(frozen=True)
class FourierDecayProfile:
    """Decay envelope |F(xi)| <= B*(|xi|**(m0-1) + 1)*exp(-2*pi*a*|xi|).

    ``a`` is the strip half-width of analyticity, ``m0`` the highest pole
    order on the strip boundary, ``B`` the envelope constant.  ``btilde``
    optionally overrides the constant of the polynomial-prefactor term in
    the summed bound (default: equal to B); it exists because the summed
    constant is only determined up to an Eulerian-number factor.
    """

    a: float
    m0: int = 1
    B: float = 1.0
    btilde: float | None = None

    def __post_init__(self):
        if not self.a > 0.0:
            raise ValueError("a must be positive")
        if self.m0 < 1:
            raise ValueError("m0 must be at least 1")
        if not self.B > 0.0:
            raise ValueError("B must be positive")
        if self.btilde is not None and not self.btilde > 0.0:
            raise ValueError("btilde must be positive when given")


def poisson_error_bound(profile: FourierDecayProfile, h: float) -> float:
    """Bound on |trapezoid error| from the aliasing series of the profile.

    Simple poles (m0 = 1): 2*B/(e^(2*a*pi/h) - 1).  Higher order adds
    Btilde*max(h**(1-m0), h)*e^(-2*a*pi/h) for the polynomial prefactor.
    """
    if not h > 0.0:
        raise ValueError("h must be positive")
    first = 2.0 * profile.B / math.expm1(2.0 * profile.a * math.pi / h)
    if profile.m0 == 1:
        return first
    bt = profile.B if profile.btilde is None else profile.btilde
    return first + bt * max(h ** (1 - profile.m0), h) * math.exp(
        -2.0 * profile.a * math.pi / h)


@dataclass(frozen=True, eq=False)
class FourierDecayFit:
    """Least-squares fit of log|F(xi)| versus xi over a grid."""

    slope: float
    intercept: float
    xi: np.ndarray
    magnitude: np.ndarray
    dropped: tuple = field(default_factory=tuple)


def fourier_transform(f: Callable, xi: float, rel_tol: float = 1e-6) -> complex:
    """int f(x)*exp(-2*pi*i*x*xi) dx by oscillatory quadrature.

    The finite part [-X, X] uses Clenshaw-Curtis oscillatory quadrature;
    each tail is completed by a two-term integration-by-parts expansion.
    X doubles until the bound on the neglected third-order term falls
    below 0.1 times the accuracy target.
    """
    if xi == 0.0:
        val, _ = quad(f, -np.inf, np.inf, limit=400)
        return complex(val)
    w = _TWO_PI * xi

    def ibp_tail(g, X, wloc):
        # int_X^inf g(u) e^(-i*wloc*u) du, two terms.
        step = 0.5
        gp = (g(X + step) - g(X - step)) / (2.0 * step)
        return np.exp(-1j * wloc * X) * (g(X) / (1j * wloc)
                                         + gp / (1j * wloc) ** 2)

    def second_deriv(g, X):
        step = 0.5
        return (g(X + step) - 2.0 * g(X) + g(X - step)) / step ** 2

    f_neg = lambda u: f(-u)
    X = 100.0
    for _ in range(12):
        # Integrate the half-ranges separately: the QUADPACK oscillatory
        # rule can fail silently on symmetric windows (near-cancelling
        # halves defeat its error estimate).
        lim = max(400, int(4 * X * abs(xi)))
        val = 0.0 + 0.0j
        for g, sign in ((f, 1.0), (f_neg, -1.0)):
            re, _ = quad(g, 0.0, X, weight="cos", wvar=w, limit=lim)
            im, _ = quad(g, 0.0, X, weight="sin", wvar=w, limit=lim)
            val += complex(re, -sign * im)
        val += ibp_tail(f, X, w) + ibp_tail(f_neg, X, -w)
        remainder = (2.0 * abs(second_deriv(f, X)) / abs(w) ** 3
                     + 2.0 * abs(second_deriv(f_neg, X)) / abs(w) ** 3)
        target = max(1e-13, rel_tol * abs(val))
        if remainder < 0.1 * target:
            return val
        X *= 2.0
    raise AccuracyError("Fourier transform tail did not converge",
                        achieved=remainder)


def fourier_decay_fit(f: Callable, xi_grid: Sequence[float],
                      drop_threshold: float = 1e-12) -> FourierDecayFit:
    """Fit the exponential decay rate of |F[f]| over a grid of xi > 0.

    Transforms below ``drop_threshold`` in magnitude are dropped from the
    fit (and reported); at least two usable points are required.  The
    returned slope estimates -2*pi*a for a function analytic in a strip of
    half-width a.
    """
    xi_grid = [float(x) for x in xi_grid]
    if any(x <= 0.0 for x in xi_grid):
        raise ValueError("xi grid must be positive")
    kept_xi, kept_mag, dropped = [], [], []
    for x in xi_grid:
        mag = abs(fourier_transform(f, x))
        if mag < drop_threshold:
            dropped.append(x)
        else:
            kept_xi.append(x)
            kept_mag.append(mag)
    if len(kept_xi) < 2:
        raise AccuracyError(
            f"only {len(kept_xi)} transform values above {drop_threshold}; "
            "cannot fit a slope")
    xi_arr = np.asarray(kept_xi)
    mag_arr = np.asarray(kept_mag)
    slope, intercept = np.polyfit(xi_arr, np.log(mag_arr), 1)
    return FourierDecayFit(slope=float(slope), intercept=float(intercept),
                           xi=xi_arr, magnitude=mag_arr,
                           dropped=tuple(dropped))
