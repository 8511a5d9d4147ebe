import math

import numpy as np
import pytest

from lightningpoly.bench import (
    OPT,
    SUB,
    SUPER,
    ConvergenceRecord,
    clustering_constant,
    compare_sigma,
    default_n2,
    fit_rate,
    lp_error_budget,
    rate_report,
    records_from_csv,
    records_to_csv,
    records_to_csv_text,
    sweep_prototype,
)
from lightningpoly.approximant import sigma_opt
from lightningpoly.core import POW, PrototypeSpec, kappa_of_beta


def synthetic_records(alpha, beta, sigma, N1_list, rate):
    """Records whose errors follow exp(rate*sqrt(N)) exactly."""
    out = []
    for n1 in N1_list:
        n2 = default_n2(n1)
        n = n1 + n2 + 1
        out.append(ConvergenceRecord(
            N=n, N1=n1, N2=n2, sigma=sigma, alpha=alpha, beta=beta,
            sup_err=math.exp(rate * math.sqrt(n)), argmax=1.0 + 0.0j,
            wall_ms=1.0))
    return out


class TestClusteringConstant:
    def test_frozen_values(self):
        assert clustering_constant(0.5) == pytest.approx(
            8.242640687119282, rel=1e-15)
        assert clustering_constant(0.0) == pytest.approx(
            3.4142135623730945, rel=1e-15)

    def test_segment_is_smaller(self):
        assert clustering_constant(0.0) < clustering_constant(1.5)


class TestConvergenceRecord:
    def test_negative_error_rejected(self):
        with pytest.raises(ValueError):
            ConvergenceRecord(N=6, N1=4, N2=1, sigma=1.0, alpha=0.5,
                              beta=0.0, sup_err=-1.0, argmax=0j, wall_ms=0.0)

    def test_degree_bookkeeping_enforced(self):
        with pytest.raises(ValueError):
            ConvergenceRecord(N=7, N1=4, N2=1, sigma=1.0, alpha=0.5,
                              beta=0.0, sup_err=1.0, argmax=0j, wall_ms=0.0)


class TestDefaultN2:
    @pytest.mark.parametrize("n1,expect", [(9, 4), (16, 6), (25, 7),
                                           (36, 8), (49, 10), (64, 11),
                                           (100, 13)])
    def test_values(self, n1, expect):
        assert default_n2(n1) == expect


class TestFitRate:
    def test_exact_exponential_recovered(self):
        sigma = sigma_opt(0.5, 0.0)
        recs = synthetic_records(0.5, 0.0, sigma,
                                 [9, 16, 25, 36, 49, 64], -math.pi)
        model = fit_rate(recs)
        assert model.regime == OPT
        assert model.predicted_slope == pytest.approx(-math.pi, rel=1e-15)
        assert model.slope == pytest.approx(-math.pi, abs=1e-12)
        report = rate_report(model)
        assert report["pass"] is True
        assert report["points_used"] == model.points_used

    def test_window_excludes_roundoff_floor(self):
        sigma = sigma_opt(0.5, 0.0)
        recs = synthetic_records(0.5, 0.0, sigma, [9, 16, 25], -math.pi)
        floor = ConvergenceRecord(N=82, N1=70, N2=11, sigma=sigma, alpha=0.5,
                                  beta=0.0, sup_err=1e-13, argmax=1.0 + 0j,
                                  wall_ms=0.0)
        model = fit_rate(recs + [floor])
        assert model.points_used == 3

    def test_regime_classification(self):
        s_opt = sigma_opt(0.5, 0.0)
        for factor, regime, predicted in (
                (0.5, SUB, -0.5 * s_opt * 0.5),
                (1.0, OPT, -math.pi),
                (1.5, SUPER, -2.0 * math.pi ** 2 / (1.5 * s_opt))):
            recs = synthetic_records(0.5, 0.0, factor * s_opt,
                                     [9, 16, 25, 36], -1.0)
            model = fit_rate(recs)
            assert model.regime == regime
            assert model.predicted_slope == pytest.approx(predicted, rel=1e-12)

    def test_too_few_in_window(self):
        sigma = sigma_opt(0.5, 0.0)
        recs = synthetic_records(0.5, 0.0, sigma, [9, 16], -math.pi)
        with pytest.raises(ValueError):
            fit_rate(recs)

    def test_mixed_sweeps_rejected(self):
        a = synthetic_records(0.5, 0.0, 2.0, [9, 16, 25], -1.0)
        b = synthetic_records(0.8, 0.0, 2.0, [36], -1.0)
        with pytest.raises(ValueError):
            fit_rate(a + b)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            fit_rate([])


@pytest.fixture(scope="module")
def small_sweep():
    spec = PrototypeSpec(kind=POW, alpha=0.5)
    return sweep_prototype(spec, 0.5, "opt", [9, 16, 25, 36])


class TestSweep:
    def test_errors_decay(self, small_sweep):
        errs = [r.sup_err for r in small_sweep]
        violations = sum(b >= a for a, b in zip(errs, errs[1:]))
        assert violations <= 1
        assert errs[-1] < 1e-3 * errs[0]

    def test_record_fields(self, small_sweep):
        for r, n1 in zip(small_sweep, [9, 16, 25, 36]):
            assert r.N1 == n1
            assert r.N2 == default_n2(n1)
            assert r.N == n1 + r.N2 + 1
            assert r.alpha == 0.5 and r.beta == 0.5
            assert r.wall_ms >= 0.0

    def test_parallel_matches_serial(self, small_sweep):
        spec = PrototypeSpec(kind=POW, alpha=0.5)
        again = sweep_prototype(spec, 0.5, "opt", [9, 16, 25, 36], n_jobs=2)
        for r, s in zip(small_sweep, again):
            assert (r.N, r.N1, r.N2) == (s.N, s.N1, s.N2)
            assert r.sup_err == s.sup_err
            assert r.argmax == s.argmax

    def test_csv_roundtrip_bit_exact(self, small_sweep, tmp_path):
        path = str(tmp_path / "sweep.csv")
        records_to_csv(small_sweep, path)
        back = records_from_csv(path)
        assert len(back) == len(small_sweep)
        for r, s in zip(small_sweep, back):
            assert r == s

    def test_csv_text_shape(self, small_sweep):
        lines = records_to_csv_text(small_sweep).splitlines()
        assert lines[0].startswith("alpha,beta,sigma,N1,N2,N,sup_err")
        assert len(lines) == len(small_sweep) + 1

    def test_non_increasing_list_rejected(self):
        spec = PrototypeSpec(kind=POW, alpha=0.5)
        with pytest.raises(ValueError):
            sweep_prototype(spec, 0.5, "opt", [9, 9, 16])
        with pytest.raises(ValueError):
            sweep_prototype(spec, 0.5, "opt", [16, 9])


class TestCompareSigma:
    def test_optimum_wins(self):
        spec = PrototypeSpec(kind=POW, alpha=0.5)
        s_opt = sigma_opt(0.5, 0.0)
        report = compare_sigma(spec, 0.0, [0.5 * s_opt, s_opt, 1.5 * s_opt],
                               [9, 16, 25])
        assert report["ordering_holds"] is True
        assert report["inconclusive"] is False
        assert report["n1_star"] in (9, 16, 25)
        errs = {e["sigma"]: e["sup_err"] for e in report["errors_at_star"]}
        assert errs[s_opt] == min(errs.values())

    def test_singleton_trivially_holds(self):
        spec = PrototypeSpec(kind=POW, alpha=0.5)
        report = compare_sigma(spec, 0.0, [sigma_opt(0.5, 0.0)], [9, 16])
        assert report["ordering_holds"] is True

    def test_requires_sigma_opt_entry(self):
        spec = PrototypeSpec(kind=POW, alpha=0.5)
        with pytest.raises(ValueError):
            compare_sigma(spec, 0.0, [1.0, 2.0], [9, 16])


class TestErrorBudget:
    def test_exponents_balance_at_sigma_opt(self):
        for alpha, beta in ((0.5, 0.0), (0.5, 0.5), (1.5, 0.0), (0.25, 1.0)):
            sigma = sigma_opt(alpha, beta)
            budget = lp_error_budget(alpha, beta, sigma, 36)
            x_trunc = -math.log(budget.truncation_term)
            x_quad = math.log1p(1.0 / budget.quadrature_term)
            assert x_quad == pytest.approx(x_trunc, rel=1e-12)

    def test_prefactor_formula(self):
        budget = lp_error_budget(0.5, 0.5, 2.0, 16, C=3.0)
        expect = (clustering_constant(0.5) ** 0.5 * 3.0 ** 0.5
                  / kappa_of_beta(0.5))
        assert budget.prefactor == pytest.approx(expect, rel=1e-15)

    def test_small_C_clamped(self):
        a = lp_error_budget(0.5, 0.0, 2.0, 16, C=0.5)
        b = lp_error_budget(0.5, 0.0, 2.0, 16, C=1.0)
        assert a.prefactor == b.prefactor

    def test_total_combines_terms(self):
        budget = lp_error_budget(0.5, 0.0, 3.0, 25)
        assert budget.total == pytest.approx(
            budget.prefactor * (budget.truncation_term
                                + budget.quadrature_term), rel=1e-15)

    def test_calibrated_budget_dominates_sweep(self):
        # Calibrate the unclaimed overall constant on the coarsest cell,
        # then the envelope must cover every finer cell.
        spec = PrototypeSpec(kind=POW, alpha=0.5)
        records = sweep_prototype(spec, 0.0, "opt", [9, 16, 25, 36])
        sigma = records[0].sigma
        budgets = [lp_error_budget(0.5, 0.0, sigma, r.N1) for r in records]
        scale = records[0].sup_err / budgets[0].total
        for r, b in zip(records[1:], budgets[1:]):
            assert r.sup_err <= 2.0 * scale * b.total

    def test_validation(self):
        with pytest.raises(ValueError):
            lp_error_budget(0.0, 0.0, 1.0, 9)
        with pytest.raises(ValueError):
            lp_error_budget(0.5, 0.0, 1.0, 0)
