"""Closed-form metric layer: spot values with forced parameters, equivalence
with the defining-integral oracles, and the analytic monotonicity properties."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from secnet import figures, metrics, montecarlo
from secnet.fading import AlphaMuParams, moment_power_gain
from secnet.metrics import ScenarioConfig


def _unit_rate_scenario(**over):
    """d = upsilon = 2 with lambda_b = 1/pi: both the path-loss rate and the
    fading-weighted rate equal one for canonical fading."""
    kwargs = dict(
        d=2, upsilon=2.0, lambda_b=1.0 / math.pi, lambda_e=1.0 / math.pi,
        alpha_b=2.0, mu_b=1.0, alpha_e=2.0, mu_e=1.0,
        eta_k=1.0, eta_e=1.0, rate=1.0, user_index=1,
    )
    kwargs.update(over)
    return ScenarioConfig.build(**kwargs)


class TestScenarioConfig:
    def test_varpi_and_threshold(self):
        cfg = _unit_rate_scenario(eta_k=4.0, eta_e=2.0, rate=2.0)
        assert cfg.varpi == pytest.approx(2.0)
        assert cfg.varpi * cfg.eta_e == pytest.approx(cfg.eta_k, rel=1e-15)
        assert cfg.outage_threshold == pytest.approx(3.0 / 4.0)

    def test_zero_rate_means_zero_threshold(self):
        assert _unit_rate_scenario(rate=0.0).outage_threshold == 0.0

    def test_validation(self):
        with pytest.raises(ValueError):
            _unit_rate_scenario(user_index=0)
        with pytest.raises(ValueError):
            _unit_rate_scenario(eta_k=-1.0)
        with pytest.raises(ValueError):
            _unit_rate_scenario(ordering="middle")

    def test_case_labels(self):
        cfg = _unit_rate_scenario(ordering="best", eavesdropper_policy="nearest")
        assert cfg.case == "BN"
        assert cfg.with_case("NB").ordering == "nearest"
        assert cfg.with_case("NB").eavesdropper_policy == "best"

    def test_branch_sums_are_fitted(self):
        cfg = ScenarioConfig.build(n_a=2, n_e=2, alpha_e=2.0, mu_e=4.0)
        # two and four summed unit-mean branches
        assert cfg.fading_b.mean_power() == pytest.approx(2.0, rel=1e-10)
        assert cfg.fading_e.mean_power() == pytest.approx(4.0, rel=1e-10)


class TestCompositeNearest:
    def test_double_exponential_ratio_density(self):
        # exponential gain over exponential distance-power: f(z) = 1/(1+z)^2
        cfg = _unit_rate_scenario()
        assert metrics.pdf_composite_nearest(cfg, 1.0) == pytest.approx(0.25, rel=1e-9)
        for z in (0.2, 2.0, 7.0):
            assert metrics.pdf_composite_nearest(cfg, z) == pytest.approx(1.0 / (1.0 + z) ** 2, rel=1e-8)
            assert metrics.cdf_composite_nearest(cfg, z) == pytest.approx(z / (1.0 + z), rel=1e-8)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_density_normalizes_on_reference_config(self, k):
        cfg = figures.scenario("fig2", k=k)
        total, _ = quad(
            lambda t: metrics.pdf_composite_nearest(cfg, t / (1.0 - t)) / (1.0 - t) ** 2,
            0.0, 1.0, epsabs=1e-10, epsrel=1e-8, limit=200,
        )
        assert total == pytest.approx(1.0, abs=1e-6)

    def test_density_tail_vanishes(self):
        cfg = figures.scenario("fig2", k=2)
        assert metrics.pdf_composite_nearest(cfg, 1e4) < 1e-6

    def test_cdf_at_zero(self):
        assert metrics.cdf_composite_nearest(figures.scenario("fig2", k=1), 0.0) == 0.0

    def test_cdf_matches_integrated_density(self):
        cfg = figures.scenario("fig2", k=2)
        for z in np.linspace(0.15, 2.0, 10):
            want, _ = quad(lambda t: metrics.pdf_composite_nearest(cfg, t), 1e-12, z,
                           epsabs=1e-11, epsrel=1e-9, limit=200)
            assert metrics.cdf_composite_nearest(cfg, z) == pytest.approx(want, abs=1e-6)

    def test_cdf_matches_conditioning_integral(self):
        cfg = figures.scenario("fig2", k=3)
        for z in (0.1, 0.5, 1.5):
            closed = metrics.cdf_composite_nearest(cfg, z)
            oracle = montecarlo._cdf_composite_nearest_quad(
                cfg.fading_b, cfg.geometry.pathloss_rate("legitimate"),
                cfg.geometry.delta, cfg.user_index, z,
            )
            assert closed == pytest.approx(oracle, abs=1e-6)

    def test_domain_errors(self):
        cfg = figures.scenario("fig2", k=1)
        with pytest.raises(ValueError):
            metrics.pdf_composite_nearest(cfg, 0.0)
        with pytest.raises(ValueError):
            metrics.cdf_composite_nearest(cfg, -1.0)


class TestCompositeBest:
    def test_cdf_limits(self):
        cfg = _unit_rate_scenario(ordering="best")
        assert metrics.cdf_composite_best(cfg, 0.0) == 0.0
        assert metrics.cdf_composite_best(cfg, 1e9) == pytest.approx(1.0, abs=1e-8)

    def test_first_best_exponential_case(self):
        # unit fading-weighted rate, unit delta, k=1 at z=1
        cfg = _unit_rate_scenario(ordering="best")
        assert metrics.cdf_composite_best(cfg, 1.0) == pytest.approx(math.exp(-1.0), rel=1e-12)

    def test_density_normalizes(self):
        # fading-weighted rate 2 with delta = 1/2 and k = 3
        fad = AlphaMuParams.canonical(2.0, 3.0)
        lam = 2.0 / (math.pi * moment_power_gain(fad, 0.5))
        cfg = ScenarioConfig.build(
            d=2, upsilon=4.0, lambda_b=lam, lambda_e=lam,
            alpha_b=2.0, mu_b=3.0, user_index=3, ordering="best",
        )
        assert cfg.geometry.composite_rate("legitimate") == pytest.approx(2.0, rel=1e-12)
        total, _ = quad(
            lambda t: metrics.pdf_composite_best(cfg, t / (1.0 - t)) / (1.0 - t) ** 2,
            0.0, 1.0, epsabs=1e-12, epsrel=1e-10, limit=300,
        )
        assert total == pytest.approx(1.0, abs=1e-8)

    def test_pdf_is_cdf_derivative(self):
        cfg = figures.scenario("fig2", k=2, ordering="best")
        h = 1e-6
        for z in (0.3, 1.0, 2.5):
            fd = (metrics.cdf_composite_best(cfg, z + h) - metrics.cdf_composite_best(cfg, z - h)) / (2 * h)
            assert metrics.pdf_composite_best(cfg, z) == pytest.approx(fd, rel=1e-6)


class TestCop:
    def test_zero_rate_never_in_outage(self):
        cfg = _unit_rate_scenario(rate=0.0)
        assert metrics.cop_nearest(cfg) == 0.0
        assert metrics.cop_best(cfg) == 0.0

    def test_best_spot_value(self):
        # unit fading-weighted rate, unit delta, unit threshold
        cfg = _unit_rate_scenario(ordering="best", rate=1.0, eta_k=1.0)
        assert cfg.outage_threshold == pytest.approx(1.0)
        assert metrics.cop_best(cfg) == pytest.approx(math.exp(-1.0), abs=1e-12)

    def test_nearest_matches_quadrature_on_fig3(self):
        for k in (1, 2, 4):
            cfg = figures.scenario("fig3", k=k, alpha=2.0, mu=2.0)
            closed = metrics.cop_nearest(cfg)
            oracle = montecarlo.integrate_defining("cop", cfg).value
            assert closed == pytest.approx(oracle, rel=1e-5)

    def test_nondecreasing_in_index_and_rate(self):
        cops = [metrics.cop_nearest(figures.scenario("fig3", k=k, alpha=2.0, mu=2.0))
                for k in range(1, 7)]
        assert all(b >= a for a, b in zip(cops, cops[1:]))
        by_rate = [
            metrics.cop_nearest(_unit_rate_scenario(rate=r)) for r in (0.25, 0.5, 1.0, 2.0, 4.0)
        ]
        assert all(b >= a for a, b in zip(by_rate, by_rate[1:]))
        best_by_rate = [
            metrics.cop_best(_unit_rate_scenario(ordering="best", rate=r))
            for r in (0.25, 0.5, 1.0, 2.0, 4.0)
        ]
        assert all(b >= a for a, b in zip(best_by_rate, best_by_rate[1:]))

    def test_first_best_never_worse_than_first_nearest(self):
        # for k = 1 the best user holds the maximal composite gain, so the
        # ordering is almost sure; at k >= 2 it holds only above a
        # low-density crossover (the full-sweep claim is exercised, and
        # refuted, in the acceptance suite)
        for lam in (0.2, 0.6, 1.0, 1.6, 2.0):
            cfg = figures.scenario("fig4", k=1, lambda_b=lam)
            assert metrics.cop_best(cfg) <= metrics.cop_nearest(cfg)

    def test_best_beats_nearest_above_density_crossover(self):
        for k, lams in ((2, (0.6, 1.0, 1.6, 2.0)), (4, (1.2, 1.6, 2.0))):
            for lam in lams:
                cfg = figures.scenario("fig4", k=k, lambda_b=lam)
                assert metrics.cop_best(cfg) <= metrics.cop_nearest(cfg)


class TestPnz:
    def test_symmetric_best_best_is_half_power(self):
        for k in (1, 2, 5):
            cfg = _unit_rate_scenario(user_index=k, ordering="best", eavesdropper_policy="best")
            assert metrics.pnz_bb(cfg) == pytest.approx(0.5**k, rel=1e-14)

    def test_forced_two_thirds(self):
        cfg = _unit_rate_scenario(lambda_b=2.0 / math.pi, lambda_e=1.0 / math.pi,
                                  ordering="best", eavesdropper_policy="best")
        assert metrics.pnz_bb(cfg) == pytest.approx(2.0 / 3.0, rel=1e-14)

    @pytest.mark.parametrize("case", ["NN", "BB", "NB", "BN"])
    def test_matches_defining_integral_on_fig6(self, case):
        cfg = figures.scenario("fig6", k=2)
        closed = metrics.pnz(cfg, case)
        oracle = montecarlo.integrate_defining(f"pnz-{case}", cfg).value
        assert closed == pytest.approx(oracle, rel=1e-5)

    @pytest.mark.parametrize("case", ["NN", "BB", "NB", "BN"])
    def test_matches_defining_integral_on_fig5(self, case):
        cfg = figures.scenario("fig5", k=2)
        closed = metrics.pnz(cfg, case)
        oracle = montecarlo.integrate_defining(f"pnz-{case}", cfg).value
        assert closed == pytest.approx(oracle, rel=1e-5)

    def test_dominant_legitimate_snr(self):
        cfg = figures.scenario("fig6", k=1)
        from dataclasses import replace
        strong = replace(cfg, eta_k=1e6, eta_e=1.0)
        assert metrics.pnz_nn(strong) > 0.999
        assert metrics.pnz_nb(strong) > 0.999

    def test_vanishing_legitimate_snr(self):
        cfg = figures.scenario("fig6", k=1)
        from dataclasses import replace
        weak = replace(cfg, eta_k=1e-6, eta_e=1.0)
        assert metrics.pnz_bn(weak) < 1e-3
        assert metrics.pnz_nn(weak) < 1e-3

    def test_descending_case_order_at_high_index(self):
        cfg = figures.scenario("fig6", k=4)
        nn, nb = metrics.pnz_nn(cfg), metrics.pnz_nb(cfg)
        bn, bb = metrics.pnz_bn(cfg), metrics.pnz_bb(cfg)
        assert nn > nb > bn > bb

    def test_bb_montone_in_index_and_snr_ratio(self):
        from dataclasses import replace
        cfg = figures.scenario("fig6", k=1).with_case("BB")
        by_k = [metrics.pnz_bb(replace(cfg, user_index=k)) for k in range(1, 8)]
        assert all(b < a for a, b in zip(by_k, by_k[1:]))
        by_w = [metrics.pnz_bb(replace(cfg, eta_k=w)) for w in (0.25, 0.5, 1.0, 2.0, 4.0)]
        assert all(b > a for a, b in zip(by_w, by_w[1:]))

    def test_all_cases_are_probabilities(self):
        for fig, kw in (("fig6", {"k": 3}), ("fig7", {"k": 2, "upsilon": 3.0})):
            cfg = figures.scenario(fig, **kw)
            for case in metrics.CASES:
                value = metrics.pnz(cfg, case)
                assert 0.0 <= value <= 1.0


class TestMaxSecureBestUsers:
    def _symmetric(self):
        return _unit_rate_scenario(ordering="best", eavesdropper_policy="best")

    def test_quarter_level_allows_two_users(self):
        assert metrics.max_secure_best_users(self._symmetric(), 0.25) == 2

    def test_point_three_level_allows_one(self):
        assert metrics.max_secure_best_users(self._symmetric(), 0.3) == 1

    def test_domain(self):
        with pytest.raises(ValueError):
            metrics.max_secure_best_users(self._symmetric(), 0.0)
        with pytest.raises(ValueError):
            metrics.max_secure_best_users(self._symmetric(), 1.0)

    def test_monotone_in_snr_ratio_and_density_ratio(self):
        tau = 0.1
        by_w = [
            metrics.max_secure_best_users(figures.scenario("fig8", varpi_db=w), tau)
            for w in np.linspace(-5, 15, 21)
        ]
        assert all(b >= a for a, b in zip(by_w, by_w[1:]))
        by_ratio = [
            metrics.max_secure_best_users(figures.scenario("fig8", ratio=r), tau)
            for r in (0.5, 1.0, 2.0, 4.0, 8.0)
        ]
        assert all(b >= a for a, b in zip(by_ratio, by_ratio[1:]))

    def test_consistent_with_bb_probability(self):
        # requesting exactly the secrecy level the k-th user achieves must
        # admit at least k users
        from dataclasses import replace
        cfg = figures.scenario("fig6", k=1).with_case("BB")
        for k in range(1, 7):
            level = metrics.pnz_bb(replace(cfg, user_index=k))
            assert metrics.max_secure_best_users(cfg, level) >= k


class TestErgodicCapacity:
    def test_vanishing_snr(self):
        cfg = figures.scenario("fig11", k=1)
        from dataclasses import replace
        faint = replace(cfg, eta_k=1e-9)
        assert metrics.ergodic_capacity_nearest(faint) < 1e-7
        assert metrics.ergodic_capacity_best(faint) < 1e-7

    def test_matches_quadrature_on_fig11(self):
        for k in (1, 2):
            cfg = figures.scenario("fig11", k=k)
            for ordering, closed_fn in (("nearest", metrics.ergodic_capacity_nearest),
                                        ("best", metrics.ergodic_capacity_best)):
                closed = closed_fn(cfg)
                oracle = montecarlo.integrate_defining(f"capacity-{ordering}", cfg).value
                assert closed == pytest.approx(oracle, rel=1e-4)

    def test_wiretap_terms_match_quadrature(self):
        cfg = figures.scenario("fig11", k=2)
        for policy in ("nearest", "best"):
            closed = metrics.wiretap_capacity(cfg, policy)
            oracle = montecarlo._quad_capacity(cfg, "eavesdropper", policy, 1)
            assert closed == pytest.approx(oracle, rel=1e-4)


class TestErgodicSecrecyCapacity:
    def test_identical_sides_yield_zero(self):
        cfg = _unit_rate_scenario(eta_k=5.0, eta_e=5.0)
        assert metrics.ergodic_secrecy_capacity(cfg, "NN") == 0.0
        assert metrics.ergodic_secrecy_capacity(cfg, "BB") == 0.0

    def test_never_negative(self):
        cfg = figures.scenario("fig11", k=6)
        from dataclasses import replace
        weak = replace(cfg, eta_k=0.01, eta_e=10.0)
        for case in metrics.CASES:
            assert metrics.ergodic_secrecy_capacity(weak, case) >= 0.0

    def test_best_receiver_nearest_eavesdropper_dominates(self):
        for k in range(1, 7):
            cfg = figures.scenario("fig11", k=k)
            values = {case: metrics.ergodic_secrecy_capacity(cfg, case) for case in metrics.CASES}
            assert values["BN"] > values["NN"]
            assert values["BN"] > values["BB"]
            assert values["BN"] > values["NB"]

    def test_matches_quadrature(self):
        cfg = figures.scenario("fig11", k=2)
        for case in metrics.CASES:
            closed = metrics.ergodic_secrecy_capacity(cfg, case)
            oracle = montecarlo.integrate_defining(f"esc-{case}", cfg).value
            assert closed == pytest.approx(oracle, rel=1e-4)
