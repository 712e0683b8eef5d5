"""Stirling cycle: stage quantities, bookkeeping, work and efficiency."""
import math

import numpy as np
import pytest

from qstirling.constants import ELECTRON_MASS, K_B, NM
from qstirling.engine import (
    CycleConfig,
    carnot_limit,
    cycle_efficiency,
    cycle_work,
    cycle_work_uncertainty_literal,
    efficiency_bounds_curve,
    heat_exchanges,
    run_cycle,
    stage_internal_energies,
    stage_partition_functions,
)
from qstirling.errors import DegenerateCycleError
from qstirling.numerics import central_difference
from qstirling.well import WellGeometry

# mpmath-frozen regression constants: electron, L = 5 nm, T1 = 320 K, T2 = 80 K
ZA_5NM = 1.8999104308089294
ZB_5NM = 1.3999104973368285
ZC_5NM = 0.22599517362717637
ZD_5NM = 0.69995524866841426
QAB_5NM_KB = -25.542002805663845
QBC_5NM_KB = -98.995574946664958
QCD_5NM_KB = -16.283763769876329
QDA_5NM_KB = 133.53406168241148
W_5NM_KB = -7.2872798397936532
ETA_DIRECT_20NM = -0.070726893037638546
ETA_UNC_20NM = -0.07287695132111431
ETA_RATIO_ERR_20NM = 0.0303994448382


def cfg_nm(L_nm, hot=320.0, cold=80.0, mode="exact_series"):
    geom = WellGeometry(half_width_L=L_nm * NM, mass_m=ELECTRON_MASS)
    return CycleConfig(geom=geom, hot_T1=hot, cold_T2=cold, evaluation_mode=mode)


class TestStagePartitionFunctions:
    def test_regression_5nm(self):
        za, zb, zc, zd = stage_partition_functions(cfg_nm(5.0))
        assert za == pytest.approx(ZA_5NM, rel=1e-12)
        assert zb == pytest.approx(ZB_5NM, rel=1e-12)
        assert zc == pytest.approx(ZC_5NM, rel=1e-12)
        assert zd == pytest.approx(ZD_5NM, rel=1e-12)

    def test_partitioned_well_identity(self):
        # Z_B is twice the single-well sum with the quadrupled scale
        cfg = cfg_nm(3.0)
        za, zb, zc, zd = stage_partition_functions(cfg)
        quad = CycleConfig(
            geom=WellGeometry(half_width_L=1.5 * NM, mass_m=ELECTRON_MASS),
            hot_T1=cfg.hot_T1,
            cold_T2=cfg.cold_T2,
        )
        za_q, _, _, zd_q = stage_partition_functions(quad)
        assert zb == pytest.approx(2.0 * za_q, rel=1e-12)
        assert zc == pytest.approx(2.0 * zd_q, rel=1e-12)

    def test_gaussian_mode_cancellation(self):
        # degeneracy 2 cancels the sqrt(4): Z_B == Z_A exactly
        za, zb, zc, zd = stage_partition_functions(cfg_nm(5.0, mode="gaussian"))
        assert zb == pytest.approx(za, rel=1e-14)
        assert zc == pytest.approx(zd, rel=1e-14)


class TestStageInternalEnergies:
    def test_gaussian_equipartition(self):
        cfg = cfg_nm(5.0, mode="gaussian")
        ua, ub, uc, ud = stage_internal_energies(cfg)
        assert ua == ub == pytest.approx(0.5 * K_B * 320.0, rel=1e-14)
        assert uc == ud == pytest.approx(0.5 * K_B * 80.0, rel=1e-14)

    def test_exact_vs_log_derivative(self):
        cfg = cfg_nm(5.0)
        ua, ub, uc, ud = stage_internal_energies(cfg)
        a = cfg.geom.alpha

        def ln_z_single(beta):
            from qstirling.kernels import boltzmann_sums, SERIES_REL_TOL, SERIES_N_MAX

            s0 = boltzmann_sums(a * beta, SERIES_REL_TOL, SERIES_N_MAX)[0]
            return math.log(s0)

        for u, beta in ((ua, cfg.beta1), (ud, cfg.beta2)):
            oracle = -central_difference(ln_z_single, beta, beta * 1e-6)
            assert u == pytest.approx(oracle, rel=1e-6)

    def test_cooling_extracts_energy(self):
        ua, ub, uc, ud = stage_internal_energies(cfg_nm(5.0))
        assert uc < ub


class TestHeatExchanges:
    def test_regression_5nm(self):
        q_ab, q_bc, q_cd, q_da = heat_exchanges(cfg_nm(5.0))
        assert q_ab / K_B == pytest.approx(QAB_5NM_KB, rel=1e-11)
        assert q_bc / K_B == pytest.approx(QBC_5NM_KB, rel=1e-11)
        assert q_cd / K_B == pytest.approx(QCD_5NM_KB, rel=1e-11)
        assert q_da / K_B == pytest.approx(QDA_5NM_KB, rel=1e-11)

    def test_degenerate_equal_baths(self):
        cfg = cfg_nm(5.0, hot=160.0, cold=160.0)
        q = heat_exchanges(cfg)
        assert math.fsum(q) == pytest.approx(0.0, abs=1e-30)
        assert q[1] == pytest.approx(0.0, abs=1e-32)  # Q_BC
        assert q[3] == pytest.approx(0.0, abs=1e-32)  # Q_DA

    def test_isochoric_signs(self):
        q_ab, q_bc, q_cd, q_da = heat_exchanges(cfg_nm(4.0))
        assert q_bc < 0.0  # cooling releases heat
        assert q_da > 0.0  # reheating absorbs


class TestWork:
    def test_direct_equals_heat_sum(self):
        cfg = cfg_nm(3.5)
        assert cycle_work(cfg, "direct") == math.fsum(heat_exchanges(cfg))

    def test_regression_5nm(self):
        assert cycle_work(cfg_nm(5.0)) / K_B == pytest.approx(W_5NM_KB, rel=1e-10)

    def test_positive_in_engine_window(self):
        # the engine produces work up to L ~ 4.58 nm at these baths
        for L in (1.0, 2.0, 3.0, 4.0, 4.5):
            assert cycle_work(cfg_nm(L)) > 0.0

    def test_negative_beyond_window(self):
        for L in (4.7, 5.0, 10.0):
            assert cycle_work(cfg_nm(L)) < 0.0

    def test_gaussian_mode_work_vanishes(self):
        cfg = cfg_nm(5.0, mode="gaussian")
        w = cycle_work(cfg)
        assert abs(w) < 1e-3 * K_B * 320.0

    def test_uncertainty_form_tracks_direct_small_t(self):
        cfg = cfg_nm(40.0)
        w_direct = cycle_work(cfg, "direct")
        w_unc = cycle_work(cfg, "uncertainty")
        assert w_unc == pytest.approx(w_direct, rel=0.12)

    def test_literal_prefactor_variant_scales_as_inverse_mass(self):
        # (2m, L/sqrt 2) leaves alpha and hence every bracket unchanged,
        # so only the 1/m prefactor differs
        base = cfg_nm(5.0)
        heavy = CycleConfig(
            geom=WellGeometry(
                half_width_L=5.0 * NM / math.sqrt(2.0), mass_m=2.0 * ELECTRON_MASS
            ),
            hot_T1=320.0,
            cold_T2=80.0,
        )
        assert heavy.geom.alpha == pytest.approx(base.geom.alpha, rel=1e-14)
        w_base = cycle_work_uncertainty_literal(base)
        w_heavy = cycle_work_uncertainty_literal(heavy)
        assert w_heavy == pytest.approx(w_base / 2.0, rel=1e-10)


class TestEfficiency:
    def test_carnot_values(self):
        assert carnot_limit(320.0, 80.0) == 0.75
        assert carnot_limit(300.0, 75.0) == 0.75
        assert carnot_limit(300.0, 299.999) == pytest.approx(1.0 / 300e3, rel=1e-3)
        with pytest.raises(ValueError):
            carnot_limit(80.0, 320.0)

    def test_direct_in_engine_window(self):
        for L in (1.0, 2.0, 3.0, 4.0):
            eta = cycle_efficiency(cfg_nm(L), "direct")
            assert 0.0 < eta < 1.0
            assert eta <= 0.75 + 1e-9

    def test_approaches_carnot_deep_quantum(self):
        eta = cycle_efficiency(cfg_nm(0.5), "direct")
        assert eta == pytest.approx(0.75, abs=1e-3)
        assert eta <= 0.75 + 1e-9

    def test_degenerate_cycle(self):
        cfg = cfg_nm(5.0, hot=160.0, cold=160.0)
        with pytest.raises(DegenerateCycleError):
            cycle_efficiency(cfg, "direct")

    def test_dual_form_agreement_20nm(self):
        cfg = cfg_nm(20.0)
        eta_d = cycle_efficiency(cfg, "direct")
        eta_u = cycle_efficiency(cfg, "uncertainty")
        assert eta_d == pytest.approx(ETA_DIRECT_20NM, rel=1e-10)
        assert eta_u == pytest.approx(ETA_UNC_20NM, rel=1e-10)
        assert abs(eta_u / eta_d - 1.0) == pytest.approx(ETA_RATIO_ERR_20NM, rel=1e-6)
        assert abs(eta_u / eta_d - 1.0) <= 0.05

    def test_rescaling_invariance(self):
        # (T1, T2) -> (lambda T1, lambda T2) with L -> L / sqrt(lambda)
        lam = 2.5
        base = cfg_nm(4.0)
        scaled = CycleConfig(
            geom=WellGeometry(
                half_width_L=4.0 * NM / math.sqrt(lam), mass_m=ELECTRON_MASS
            ),
            hot_T1=320.0 * lam,
            cold_T2=80.0 * lam,
        )
        assert cycle_efficiency(scaled, "direct") == pytest.approx(
            cycle_efficiency(base, "direct"), rel=1e-10
        )


class TestRunCycle:
    def test_bookkeeping_identity(self):
        res = run_cycle(cfg_nm(3.0))
        heats = res.q_ab + res.q_bc + res.q_cd + res.q_da
        assert res.work == pytest.approx(heats, rel=1e-12)

    def test_fields_consistent(self):
        cfg = cfg_nm(2.0)
        res = run_cycle(cfg)
        assert res.z_a == stage_partition_functions(cfg)[0]
        assert res.carnot == 0.75
        assert res.d_coeff > res.e_coeff > 0.0
        assert not res.carnot_exceeded
        assert res.eta_direct <= res.carnot + 1e-9

    def test_heat_input_absorbed_in_window(self):
        res = run_cycle(cfg_nm(3.0))
        assert res.q_ab + res.q_da > 0.0
        assert res.work > 0.0


class TestEfficiencyBoundsCurve:
    def test_rows_sorted_and_ordered(self):
        cfg = cfg_nm(2.0)
        rows = efficiency_bounds_curve(cfg, np.linspace(0.5, 4.3, 16) * NM)
        xs = [r.sum_uncertainty for r in rows]
        assert xs == sorted(xs)
        for r in rows:
            assert r.eta_lower <= r.eta_upper + 1e-12
            assert r.eta_upper <= 0.75 + 1e-9

    def test_lower_curve_nonincreasing(self):
        cfg = cfg_nm(2.0)
        rows = efficiency_bounds_curve(cfg, np.linspace(0.5, 4.3, 16) * NM)
        etas = [r.eta_lower for r in rows]
        assert all(b <= a + 1e-12 for a, b in zip(etas, etas[1:]))

    def test_bounds_meet_at_small_uncertainty(self):
        cfg = cfg_nm(2.0)
        rows = efficiency_bounds_curve(cfg, [0.4 * NM, 4.0 * NM])
        assert rows[0].eta_upper - rows[0].eta_lower < 5e-3
        assert rows[-1].eta_upper - rows[-1].eta_lower > 0.3

    def test_empty_sweep_rejected(self):
        with pytest.raises(ValueError):
            efficiency_bounds_curve(cfg_nm(2.0), [])


class TestConfigValidation:
    def test_rejects_inverted_baths(self):
        with pytest.raises(ValueError):
            cfg_nm(5.0, hot=80.0, cold=320.0)

    def test_rejects_unknown_mode(self):
        with pytest.raises(ValueError):
            cfg_nm(5.0, mode="magic")
