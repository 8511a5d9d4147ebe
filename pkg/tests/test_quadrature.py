import math

import numpy as np
import pytest

from lightningpoly.core import POW, POW_LOG, PrototypeSpec, prototype_eval
from lightningpoly.errors import AccuracyError, BranchCutError
from lightningpoly.quadrature import (FourierDecayProfile, closed_form_E1,
                                      closed_form_E2, closed_form_I1,
                                      closed_form_I2, closed_form_sinc,
                                      fourier_decay_fit, fourier_transform,
                                      integral_rep_pow, integral_rep_pow_log,
                                      poisson_error_bound,
                                      trapezoid_real_line)
from lightningpoly.core import chebyshev_nodes

DELTA = (math.sqrt(2.0) - 1.0) / 2.0


def sector_points(beta: float, n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    r = rng.uniform(0.05, 1.0, n)
    if beta == 0.0:
        return r.astype(complex)
    theta = rng.uniform(-beta * np.pi / 2, beta * np.pi / 2, n)
    return r * np.exp(1j * theta)


class TestIntegralRepPow:
    def test_at_one(self):
        assert integral_rep_pow(1.0, 0.5, 0) == pytest.approx(1.0, abs=1e-12)

    def test_at_zero(self):
        assert integral_rep_pow(0.0, 0.3, 0) == 0.0

    def test_node_reproduction(self):
        nodes = chebyshev_nodes(1, DELTA)
        got = integral_rep_pow(complex(nodes[0]), 1.7, 1, nodes)
        assert abs(got - nodes[0] ** 1.7) < 1e-10

    @pytest.mark.parametrize("alpha", [0.3, 0.8])
    @pytest.mark.parametrize("beta", [0.0, 1.5])
    def test_matches_prototype_spot(self, alpha, beta):
        spec = PrototypeSpec(kind=POW, alpha=alpha)
        for z in sector_points(beta, 5, seed=3):
            got = integral_rep_pow(complex(z), alpha, 0)
            want = prototype_eval(spec, complex(z))
            assert abs(got - want) <= 1e-10 * max(1.0, abs(z) ** alpha)

    def test_general_ell_spot(self):
        spec = PrototypeSpec(kind=POW, alpha=2.5)
        nodes = chebyshev_nodes(2, DELTA)
        for z in sector_points(0.5, 4, seed=5):
            got = integral_rep_pow(complex(z), 2.5, 2, nodes)
            assert abs(got - prototype_eval(spec, complex(z))) <= 1e-8

    def test_branch_cut(self):
        with pytest.raises(BranchCutError):
            integral_rep_pow(-1.0 + 0.0j, 0.5, 0)

    def test_argument_validation(self):
        with pytest.raises(ValueError):
            integral_rep_pow(1.0, 1.5, 0)  # ell=0 needs alpha < 1
        with pytest.raises(ValueError):
            integral_rep_pow(1.0, 2.5, 1, chebyshev_nodes(1, DELTA))


class TestIntegralRepPowLog:
    def test_log_vanishes_at_one(self):
        assert abs(integral_rep_pow_log(1.0, 0.5, 0)) < 1e-12

    def test_quarter(self):
        got = integral_rep_pow_log(0.25, 0.5, 0)
        assert got.real == pytest.approx(-0.6931471805599453, abs=1e-11)
        assert abs(got.imag) < 1e-11

    def test_node_reproduction(self):
        nodes = chebyshev_nodes(2, DELTA)
        s = nodes[1]
        got = integral_rep_pow_log(complex(s), 1.2, 2, nodes)
        assert abs(got - s ** 1.2 * math.log(s)) < 1e-9

    def test_matches_prototype_spot(self):
        spec = PrototypeSpec(kind=POW_LOG, alpha=0.5)
        for z in sector_points(0.5, 4, seed=11):
            got = integral_rep_pow_log(complex(z), 0.5, 0)
            want = prototype_eval(spec, complex(z))
            assert abs(got - want) <= 1e-10 * max(1.0, abs(z) ** 0.5)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            integral_rep_pow_log(0.0, 0.5, 0)


class TestTrapezoidEngine:
    def runge(self, x):
        return 1.0 / (1.0 + x * x)

    @pytest.mark.parametrize("h", [1.0, 0.5])
    def test_matches_closed_form(self, h):
        n_max = int(math.ceil(100.0 / h))
        got = trapezoid_real_line(self.runge, h, n_max, em_order=3)
        assert abs(got.value - closed_form_I1(h)) <= 1e-9

    def test_double_pole_integrand(self):
        f = lambda x: 1.0 / (1.0 + x * x) ** 2
        got = trapezoid_real_line(f, 0.5, 200, em_order=3)
        assert abs(got.value - closed_form_I2(0.5)) <= 1e-9

    def test_gaussian_superexponential(self):
        got = trapezoid_real_line(lambda x: math.exp(-x * x), 0.5, 20,
                                  em_order=0)
        assert abs(got.value - math.sqrt(math.pi)) <= 1e-12

    def test_tail_estimate_is_small(self):
        got = trapezoid_real_line(self.runge, 0.5, 200, em_order=3)
        assert got.tail_estimate < 1e-9

    def test_argument_validation(self):
        with pytest.raises(ValueError):
            trapezoid_real_line(self.runge, 0.0, 10)
        with pytest.raises(ValueError):
            trapezoid_real_line(self.runge, 1.0, 0)
        with pytest.raises(ValueError):
            trapezoid_real_line(self.runge, 1.0, 10, em_order=5)


class TestClosedForms:
    def test_I1_at_one(self):
        assert closed_form_I1(1.0) == pytest.approx(3.153348094937162,
                                                    rel=1e-15)

    def test_I1_small_h_limit(self):
        assert closed_form_I1(0.05) == pytest.approx(math.pi, rel=1e-15)

    def test_E1_at_one(self):
        assert closed_form_E1(1.0) == pytest.approx(-0.011755441347369113,
                                                    rel=1e-14)

    def test_E1_consistency(self):
        for h in (1.0, 0.5, 0.25):
            direct = math.pi - closed_form_I1(h)
            assert closed_form_E1(h) == pytest.approx(direct, rel=1e-10)

    def test_error_ratio_law(self):
        # The cancellation-free E1 form carries the ratio to full
        # precision; the subtractive pi - I1 route loses digits once the
        # error drops toward roundoff of pi, so it gets a looser bound.
        for h in (1.0, 0.5):
            lhs = closed_form_E1(h / 2) / closed_form_E1(h)
            rhs = math.expm1(2.0 * math.pi / h) / math.expm1(4.0 * math.pi / h)
            assert abs(lhs - rhs) <= 1e-12 * abs(rhs)
            sub = ((math.pi - closed_form_I1(h / 2))
                   / (math.pi - closed_form_I1(h)))
            assert abs(sub - rhs) <= 1e-5 * abs(rhs)

    def test_E2_matches_I2(self):
        direct = 0.5 * math.pi - closed_form_I2(1.0)
        assert abs(closed_form_E2(1.0) - direct) <= 1e-13 * abs(direct)
        direct = 0.5 * math.pi - closed_form_I2(0.5)
        assert abs(closed_form_E2(0.5) - direct) <= 1e-10 * abs(direct)

    def test_E2_over_E1_prefactor(self):
        # The double pole adds a 1/h factor: E2/E1 -> pi/h as h -> 0.
        h = 0.1
        ratio = closed_form_E2(h) / closed_form_E1(h)
        assert ratio == pytest.approx(math.pi / h, rel=0.05)

    def test_sinc_below_one(self):
        for h in (0.3, 0.7, 0.999):
            assert closed_form_sinc(h) == 0.5

    def test_sinc_aliasing_steps(self):
        assert 0.5 - closed_form_sinc(1.0) == -0.5
        assert 0.5 - closed_form_sinc(2.5) == -2.0
        assert closed_form_sinc(1.5) == 1.5


class TestPoissonBound:
    def test_simple_pole_value(self):
        profile = FourierDecayProfile(a=1.0, B=1.0)
        assert poisson_error_bound(profile, 1.0) == pytest.approx(
            0.0037418731973212892, rel=1e-14)

    def test_dominates_E1(self):
        profile = FourierDecayProfile(a=1.0, B=math.pi)
        for h in (1.0, 0.5, 0.25):
            assert poisson_error_bound(profile, h) >= abs(closed_form_E1(h))

    def test_dominates_E2(self):
        # |F[1/(1+x^2)^2]| = (pi/2)(1+2*pi*|xi|)e^(-2*pi*|xi|), so the
        # envelope constant is B = pi^2 and the aliasing series needs a
        # doubled prefactor constant on the polynomial term.
        B = math.pi ** 2
        profile = FourierDecayProfile(a=1.0, m0=2, B=B, btilde=2.0 * B)
        for h in (1.0, 0.5, 0.25):
            assert poisson_error_bound(profile, h) >= abs(closed_form_E2(h))

    def test_vanishes_as_h_to_zero(self):
        profile = FourierDecayProfile(a=1.0, B=1.0)
        assert poisson_error_bound(profile, 0.05) < 1e-50

    def test_profile_validation(self):
        with pytest.raises(ValueError):
            FourierDecayProfile(a=0.0)
        with pytest.raises(ValueError):
            FourierDecayProfile(a=1.0, m0=0)
        with pytest.raises(ValueError):
            FourierDecayProfile(a=1.0, B=-1.0)


class TestFourier:
    def runge(self, x):
        return 1.0 / (1.0 + x * x)

    def test_transform_value(self):
        got = fourier_transform(self.runge, 0.5)
        want = math.pi * math.exp(-math.pi)
        assert abs(got - want) <= 1e-5 * want

    def test_transform_at_zero(self):
        got = fourier_transform(self.runge, 0.0)
        assert got == pytest.approx(math.pi, rel=1e-8)

    def test_runge_decay_slope(self):
        fit = fourier_decay_fit(self.runge, [0.2, 0.4, 0.6, 0.8, 1.0])
        assert abs(fit.slope + 2.0 * math.pi) <= 0.05 * 2.0 * math.pi
        assert not fit.dropped

    def test_odd_derivative_integrand(self):
        # 2x/(1+x^2)^2 has |F| = 2*pi^2*|xi|*e^(-2*pi*|xi|): same decay
        # rate, with the algebraic prefactor pulling the fit above -2*pi.
        f = lambda x: 2.0 * x / (1.0 + x * x) ** 2
        fit = fourier_decay_fit(f, [0.5, 1.0, 1.5, 2.0, 2.5])
        assert abs(fit.slope + 2.0 * math.pi) <= 0.2 * 2.0 * math.pi
        assert fit.slope > -2.0 * math.pi

    def test_gaussian_superexponential(self):
        f = lambda x: math.exp(-x * x)
        fit = fourier_decay_fit(f, [0.8, 1.0, 1.2, 1.4])
        assert fit.slope < -4.0 * math.pi

    def test_all_dropped_raises(self):
        f = lambda x: math.exp(-x * x)
        with pytest.raises(AccuracyError):
            fourier_decay_fit(f, [5.0, 6.0])

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            fourier_decay_fit(self.runge, [0.0, 0.5])
