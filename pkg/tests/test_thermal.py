"""Canonical ensemble: partition function, mean energy, level statistics,
thermal variances and the uncertainty relations."""
import math
import warnings

import numpy as np
import pytest

from qstirling.constants import K_B
from qstirling.errors import ConvergenceError
from qstirling.numerics import central_difference, sum_series
from qstirling.thermal import (
    RegimeWarning,
    ThermalEnvironment,
    UncertaintyPair,
    alpha_beta,
    eigenstate_uncertainty,
    mean_energy,
    mean_quantum_number,
    mean_square_quantum_number,
    partition_function,
    reduced_environment,
    thermal_uncertainty,
    thermal_uncertainty_series,
    thermal_variance_p,
    thermal_variance_x,
)
from qstirling.well import WellGeometry, reduced_geometry

# mpmath-frozen references (40-digit evaluations)
Z_EXACT_T001 = 8.3622692545275801365
GAP_T001 = 0.5
NBAR_SERIES_T1EM4 = 56.73812864109263626
VARX_SIMP_T001 = 0.31474795605746792502
VARX_ERFC_T001 = 0.31429216102679426687
VARX_SIMP_T05 = 0.43790865975771429106
VARX_ERFC_T05 = 0.29956684495068231458
PROD9_T001 = 6.2314101657837705326
DP2_RATIO_ERR_T001 = 0.0564189583548
DP2_RATIO_ERR_T0005 = 0.0398942280401


def env_for_t(geom, t):
    """Environment whose alpha*beta equals t for the given geometry (k_B=1)."""
    return reduced_environment(geom.alpha / t)


class TestEnvironment:
    def test_beta(self):
        env = ThermalEnvironment(320.0)
        assert env.beta == pytest.approx(1.0 / (K_B * 320.0), rel=1e-15)

    def test_rejects_nonpositive_temperature(self):
        with pytest.raises(ValueError):
            ThermalEnvironment(0.0)

    def test_alpha_beta(self, geom_unit):
        env = env_for_t(geom_unit, 0.25)
        assert alpha_beta(geom_unit, env) == pytest.approx(0.25, rel=1e-14)


class TestPartitionFunction:
    def test_gaussian_unit_point(self, geom_unit):
        env = env_for_t(geom_unit, math.pi / 4.0)
        assert partition_function(geom_unit, env, "gaussian") == pytest.approx(1.0, rel=1e-14)

    def test_exact_series_reference(self, geom_unit):
        env = env_for_t(geom_unit, 1.0)
        assert partition_function(geom_unit, env, "exact_series") == pytest.approx(
            0.38631860241332608, rel=1e-13
        )

    def test_exact_below_gaussian_with_half_gap(self, geom_unit):
        env = env_for_t(geom_unit, 0.01)
        ze = partition_function(geom_unit, env, "exact_series")
        zg = partition_function(geom_unit, env, "gaussian")
        assert ze == pytest.approx(Z_EXACT_T001, rel=1e-13)
        assert ze < zg
        assert zg - ze == pytest.approx(GAP_T001, rel=0.02)

    @pytest.mark.parametrize("t", [1e-4, 0.01, 0.3, 2.0, 30.0])
    def test_exact_always_below_gaussian(self, geom_unit, t):
        env = env_for_t(geom_unit, t)
        assert partition_function(geom_unit, env) < partition_function(
            geom_unit, env, "gaussian"
        )

    def test_matches_generic_series_engine(self, geom_unit):
        env = env_for_t(geom_unit, 0.07)
        via_kernel = partition_function(geom_unit, env)
        via_generic = sum_series(lambda n: math.exp(-0.07 * n * n)).value
        assert via_kernel == pytest.approx(via_generic, rel=1e-13)

    def test_gaussian_identity_with_nbar(self, geom_unit):
        env = env_for_t(geom_unit, 0.02)
        z = partition_function(geom_unit, env, "gaussian")
        nbar = mean_quantum_number(geom_unit, env)
        assert z == pytest.approx(math.pi * nbar / 2.0, rel=1e-14)


class TestMeanEnergy:
    def test_gaussian_equipartition_si(self, geom_si):
        env = ThermalEnvironment(320.0)
        assert mean_energy(geom_si, env, "gaussian") == pytest.approx(
            K_B * 320.0 / 2.0, rel=1e-14
        )

    def test_exact_vs_log_derivative(self, geom_unit):
        env = env_for_t(geom_unit, 0.05)
        u = mean_energy(geom_unit, env, "exact_series")

        def ln_z(beta):
            bath = reduced_environment(1.0 / beta)
            return math.log(partition_function(geom_unit, bath, "exact_series"))

        oracle = -central_difference(ln_z, env.beta, env.beta * 1e-6)
        assert u == pytest.approx(oracle, rel=1e-6)

    def test_exact_approaches_gaussian(self, geom_unit):
        env = env_for_t(geom_unit, 1e-4)
        exact = mean_energy(geom_unit, env, "exact_series")
        gauss = mean_energy(geom_unit, env, "gaussian")
        assert abs(exact / gauss - 1.0) < 0.01


class TestMeanQuantumNumber:
    @pytest.mark.parametrize("t,expect", [(1.0 / math.pi, 1.0), (1.0 / (4.0 * math.pi), 2.0)])
    def test_closed_form_inversion(self, geom_unit, t, expect):
        env = env_for_t(geom_unit, t)
        assert mean_quantum_number(geom_unit, env) == pytest.approx(expect, rel=1e-14)

    def test_series_variant_reference(self, geom_unit):
        env = env_for_t(geom_unit, 1e-4)
        series = mean_quantum_number(geom_unit, env, "exact_series")
        assert series == pytest.approx(NBAR_SERIES_T1EM4, rel=1e-12)
        closed = mean_quantum_number(geom_unit, env, "closed")
        assert abs(closed / series - 1.0) < 0.01


class TestVarianceX:
    def test_small_t_limit(self, geom_unit):
        env = env_for_t(geom_unit, 1e-10)
        for mode in ("erfc_exact", "simplified"):
            v = thermal_variance_x(geom_unit, env, mode=mode)
            assert v == pytest.approx(1.0 / 3.0, rel=1e-4)

    def test_modes_close_in_regime(self, geom_unit):
        env = env_for_t(geom_unit, 0.01)
        ve = thermal_variance_x(geom_unit, env, "erfc_exact")
        vs = thermal_variance_x(geom_unit, env, "simplified")
        assert ve == pytest.approx(VARX_ERFC_T001, rel=1e-12)
        assert vs == pytest.approx(VARX_SIMP_T001, rel=1e-12)
        assert abs(ve - vs) < 1e-3

    def test_modes_split_outside_regime(self, geom_unit):
        env = env_for_t(geom_unit, 0.5)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RegimeWarning)
            ve = thermal_variance_x(geom_unit, env, "erfc_exact")
            vs = thermal_variance_x(geom_unit, env, "simplified")
        assert ve == pytest.approx(VARX_ERFC_T05, rel=1e-12)
        assert vs == pytest.approx(VARX_SIMP_T05, rel=1e-12)
        assert abs(ve - vs) > 0.1

    def test_regime_warning(self, geom_unit):
        env = env_for_t(geom_unit, 0.8)
        with pytest.warns(RegimeWarning):
            thermal_variance_x(geom_unit, env)

    def test_length_scaling(self):
        wide = reduced_geometry(half_width_L=2.0)
        narrow = reduced_geometry(half_width_L=1.0)
        env_w = env_for_t(wide, 0.02)
        env_n = env_for_t(narrow, 0.02)
        assert thermal_variance_x(wide, env_w) == pytest.approx(
            4.0 * thermal_variance_x(narrow, env_n), rel=1e-13
        )


class TestVarianceP:
    def test_reference_value(self, geom_unit):
        env = env_for_t(geom_unit, 1.0 / math.pi)  # nbar = 1
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RegimeWarning)
            v = thermal_variance_p(geom_unit, env)
        assert v == pytest.approx(math.pi**3 / 8.0, rel=1e-13)
        assert math.sqrt(v) == pytest.approx(1.9687012432153024, rel=1e-12)

    def test_temperature_scaling(self, geom_unit):
        # quadrupling T doubles nbar and quadruples the variance
        e1 = env_for_t(geom_unit, 0.04)
        e4 = env_for_t(geom_unit, 0.01)
        assert thermal_variance_p(geom_unit, e4) == pytest.approx(
            4.0 * thermal_variance_p(geom_unit, e1), rel=1e-13
        )

    def test_nbar_squared_vs_exact_average(self, geom_unit):
        # the closed form stands in for <n^2>; compare against the series
        for t, frozen in ((0.01, DP2_RATIO_ERR_T001), (0.005, DP2_RATIO_ERR_T0005)):
            env = env_for_t(geom_unit, t)
            closed = thermal_variance_p(geom_unit, env)
            series = (
                math.pi**2
                * geom_unit.hbar**2
                / (4.0 * geom_unit.half_width_L**2)
                * mean_square_quantum_number(geom_unit, env)
            )
            err = abs(closed / series - 1.0)
            assert err == pytest.approx(frozen, rel=1e-6)
        assert DP2_RATIO_ERR_T0005 < 0.05  # inside 5 percent by t = 0.005


class TestThermalUncertainty:
    def test_product_reproduces_nbar_form(self, geom_unit):
        env = env_for_t(geom_unit, 0.01)
        pair = thermal_uncertainty(geom_unit, env, x_mode="simplified")
        assert pair.product == pytest.approx(PROD9_T001, rel=1e-12)
        # same algebra written through nbar
        nbar = mean_quantum_number(geom_unit, env)
        bracket = 1.0 / 3.0 - 4.0 / (nbar * math.pi**3) * (
            math.exp(-1.0 / (math.pi * nbar**2)) - 1.0 / nbar
        )
        direct = nbar * math.pi**1.5 / (2.0 * math.sqrt(2.0)) * math.sqrt(bracket)
        assert pair.product == pytest.approx(direct, rel=1e-10)

    def test_floor_on_grid(self):
        for T in np.linspace(80.0, 320.0, 5):
            for L_nm in np.linspace(0.2, 5.0, 9):
                geom = WellGeometry(half_width_L=L_nm * 1e-9)
                env = ThermalEnvironment(float(T))
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", RegimeWarning)
                    pair = thermal_uncertainty(geom, env)
                assert pair.product >= 0.5 * geom.hbar

    def test_sum_grows_with_temperature_series(self, geom_si):
        sums = [
            thermal_uncertainty_series(geom_si, ThermalEnvironment(T)).sum_value
            for T in (80.0, 160.0, 320.0)
        ]
        assert sums[0] < sums[1] < sums[2]

    def test_sum_grows_with_temperature_closed_reduced(self):
        # in reduced units the momentum term dominates and scales like sqrt(T)
        geom = reduced_geometry()
        sums = [
            thermal_uncertainty(geom, reduced_environment(T)).sum_value
            for T in (80.0, 160.0, 320.0)
        ]
        assert sums[0] < sums[1] < sums[2]

    def test_pinned_sets_effective_product(self, geom_unit):
        env = reduced_environment(1000.0)  # temperature ignored once pinned
        pair1 = thermal_uncertainty(geom_unit, env, pinned_n=1)
        env_eq = env_for_t(geom_unit, 1.0 / math.pi)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RegimeWarning)
            pair2 = thermal_uncertainty(geom_unit, env_eq)
        assert pair1.delta_x == pytest.approx(pair2.delta_x, rel=1e-13)
        assert pair1.delta_p == pytest.approx(pair2.delta_p, rel=1e-13)

    def test_series_matches_eigenstate_at_low_T(self, geom_unit):
        env = env_for_t(geom_unit, 40.0)  # ground state dominates
        pair = thermal_uncertainty_series(geom_unit, env)
        ground = eigenstate_uncertainty(geom_unit, 1)
        assert pair.delta_x == pytest.approx(ground.delta_x, rel=1e-12)
        assert pair.delta_p == pytest.approx(ground.delta_p, rel=1e-12)

    def test_pair_consistency(self, geom_unit):
        pair = UncertaintyPair(delta_x=2.0, delta_p=3.0, mode="eigenstate")
        assert pair.product == 6.0
        assert pair.sum_value == 5.0
        with pytest.raises(ValueError):
            UncertaintyPair(delta_x=-1.0, delta_p=1.0, mode="eigenstate")


class TestEigenstateUncertainty:
    def test_matches_closed_product(self, geom_unit):
        pair = eigenstate_uncertainty(geom_unit, 1)
        assert pair.mode == "eigenstate"
        assert pair.product == pytest.approx(0.56786180838661198, rel=1e-13)
        assert pair.product >= 0.5 * geom_unit.hbar


class TestFigureOneBehavior:
    def test_curves_coincide_small_L_separate_large_L(self):
        # exact-series sums, electron mass: the frozen regression thresholds
        def gap(L_nm):
            geom = WellGeometry(half_width_L=L_nm * 1e-9)
            hi = thermal_uncertainty_series(geom, ThermalEnvironment(320.0)).sum_value
            lo = thermal_uncertainty_series(geom, ThermalEnvironment(80.0)).sum_value
            return (hi - lo) / lo

        assert abs(gap(0.2)) < 0.02
        assert gap(5.0) > 0.10


def test_series_convergence_error_surfaces(geom_unit):
    bad_env = env_for_t(geom_unit, 1e-30)  # would need ~1e15 terms
    with pytest.raises(ConvergenceError):
        partition_function(geom_unit, bad_env, "exact_series")
