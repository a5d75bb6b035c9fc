import numpy as np
import pytest

from dlcsim import presets
from dlcsim.errors import DomainError, UnreachableTargetError
from dlcsim.pipeline import (
    EvalPath,
    MppSample,
    ScenarioConfig,
    StageReport,
    SweepAxis,
    count_sign_changes,
    coverage_radius,
    eta_om,
    pm_vs_ps,
    run_scenario,
    sweep,
)
from dlcsim.pv import OperatingPoint


class TestScenarioConfig:
    def test_wavelength_mismatch(self):
        cfg = ScenarioConfig.from_presets(810)
        with pytest.raises(DomainError):
            cfg.with_(panel=presets.pv_panel(1550))

    @pytest.mark.parametrize("changes", [{"p_s": 0.0}, {"d_km": -1.0}])
    def test_invalid(self, changes):
        with pytest.raises(DomainError):
            ScenarioConfig.from_presets(810, **changes)


class TestRunScenario:
    def test_810_closed_form(self, cfg810):
        # 0.445*0.541 - 0.63675/40
        report = run_scenario(cfg810)
        assert report.eta_o == pytest.approx(0.22482625, abs=1e-12)
        assert report.p_r == report.p_l

    def test_1550_closed_form(self, cfg1550):
        # 0.34*0.498 - 0.8468/40
        assert run_scenario(cfg1550).eta_o == pytest.approx(0.14815, abs=1e-12)

    def test_efficiency_ledger_is_consistent(self):
        for nm in presets.WAVELENGTHS_NM:
            for path in EvalPath:
                for d in (0.0, 1.0, 5.0):
                    r = run_scenario(ScenarioConfig.from_presets(nm, d_km=d, path=path))
                    assert r.eta_o == pytest.approx(r.eta_el * r.eta_lt * r.eta_le, abs=1e-9)
                    assert r.p_m <= r.p_r <= r.p_l <= r.p_s

    def test_below_threshold(self):
        r = run_scenario(ScenarioConfig.from_presets(810, p_s=1.0))
        assert r.below_threshold and r.status == "below_threshold"
        assert (r.p_l, r.p_r, r.p_m, r.eta_o) == (0.0, 0.0, 0.0, 0.0)

    def test_physical_path_tracks_closed_form(self):
        for nm in presets.WAVELENGTHS_NM:
            closed = run_scenario(ScenarioConfig.from_presets(nm, d_km=0.5))
            phys = run_scenario(ScenarioConfig.from_presets(nm, d_km=0.5, path="physical_model"))
            assert phys.p_m == pytest.approx(closed.p_m, rel=0.05)


class TestPmVsPs:
    def test_values(self, cfg810):
        # 0.445*0.541*40 + (0.541*(-0.75) - 0.231)
        assert pm_vs_ps(cfg810, 40.0, eta_lt=1.0) == pytest.approx(8.99305, abs=1e-12)
        # 0.445*0.541*0.5*40 + (0.541*(-0.75)*0.5 - 0.231)
        assert pm_vs_ps(cfg810, 40.0, eta_lt=0.5) == pytest.approx(4.381025, abs=1e-12)

    def test_slope(self, cfg810):
        for eta in (1.0, 0.5, 0.2):
            step = pm_vs_ps(cfg810, 41.0, eta) - pm_vs_ps(cfg810, 40.0, eta)
            assert step == pytest.approx(0.445 * 0.541 * eta, rel=1e-10)

    def test_clamped(self, cfg810):
        assert pm_vs_ps(cfg810, 0.5, eta_lt=1.0) == 0.0

    def test_agrees_with_chain(self):
        for nm in presets.WAVELENGTHS_NM:
            for d in (0.0, 2.0):
                cfg = ScenarioConfig.from_presets(nm, d_km=d)
                assert pm_vs_ps(cfg, cfg.p_s) == pytest.approx(run_scenario(cfg).p_m, abs=1e-12)


class TestEtaOm:
    def test_plateau(self, cfg810):
        assert eta_om(cfg810, 1e12) == pytest.approx(0.445 * 0.541, abs=1e-10)
        assert 0.445 * 0.541 == pytest.approx(0.2407, abs=1e-4)

    def test_fog_clamp(self):
        cfg = ScenarioConfig.from_presets(810, regime="fog", d_km=1.0)
        assert eta_om(cfg) == 0.0

    def test_monotone(self, cfg810):
        ps = np.linspace(2, 200, 100)
        assert np.all(np.diff([eta_om(cfg810, p) for p in ps]) > 0)
        ds = np.linspace(0, 10, 100)
        assert np.all(np.diff([eta_om(cfg810.with_(d_km=d)) for d in ds]) < 0)

    def test_domain(self, cfg810):
        with pytest.raises(DomainError):
            eta_om(cfg810, 0.0)


class TestCoverage:
    def test_boundary(self, cfg810):
        eta0 = eta_om(cfg810, eta_lt=1.0)
        assert coverage_radius(cfg810, eta0 * (1 - 1e-12)) == pytest.approx(0.0, abs=1e-5)

    def test_unreachable_1550(self, cfg1550):
        with pytest.raises(UnreachableTargetError) as info:
            coverage_radius(cfg1550, 0.20)
        assert info.value.eta_max == pytest.approx(0.14815, abs=1e-12)

    def test_against_dense_scan(self, cfg810):
        d = np.arange(0, 20001) * 1e-3
        scan = np.array([eta_om(cfg810.with_(d_km=x)) for x in d])
        d_scan = d[np.argmax(scan < 0.15)]
        assert coverage_radius(cfg810, 0.15) == pytest.approx(d_scan, abs=2e-3)

    def test_round_trip(self):
        for nm, regime, d in [(810, "clear_air", 3.0), (1550, "haze", 2.0), (810, "fog", 0.1)]:
            cfg = ScenarioConfig.from_presets(nm, regime=regime)
            target = eta_om(cfg.with_(d_km=d))
            assert coverage_radius(cfg, target) == pytest.approx(d, abs=1e-5)

    def test_rejects_nonpositive_target(self, cfg810):
        with pytest.raises(DomainError):
            coverage_radius(cfg810, 0.0)


def test_count_sign_changes():
    assert count_sign_changes([1, 2, -1, -2, 0, 0]) == 1
    assert count_sign_changes([1, 0, 1, -1, 1]) == 2
    assert count_sign_changes([0, 0]) == 0


class TestCrossover:
    def _diff(self, regime, grid):
        c810 = ScenarioConfig.from_presets(810, regime=regime)
        c1550 = ScenarioConfig.from_presets(1550, regime=regime)
        return np.array([eta_om(c810.with_(d_km=d)) - eta_om(c1550.with_(d_km=d)) for d in grid])

    def test_clear_air_single_crossing(self):
        assert count_sign_changes(self._diff("clear_air", np.linspace(0, 40, 4001))) == 1

    def test_fog_no_crossing(self):
        assert np.all(self._diff("fog", np.linspace(0, 1, 1001)) >= 0)


class TestSweep:
    def test_distance_zero(self, cfg810):
        rows = sweep(cfg810, "distance", [0.0])
        assert len(rows) == 1 and rows[0].result.eta_lt == 1.0

    def test_supply_power_eta_el_monotone(self, cfg810):
        rows = sweep(cfg810, SweepAxis.SUPPLY_POWER, np.linspace(0.5, 100, 100))
        eta = [r.result.eta_el for r in rows]
        assert np.all(np.diff(eta) >= 0)

    def test_transmission_efficiency_linear(self, cfg810):
        rows = sweep(cfg810, "transmission_efficiency", [0.25, 0.5, 0.75, 1.0])
        eta = np.array([r.result.eta_o for r in rows])
        assert np.allclose(np.diff(eta, 2), 0.0, atol=1e-12)
        assert eta[-1] == pytest.approx(eta_om(cfg810), abs=1e-12)

    def test_received_power_and_voltage(self, cfg810):
        rows = sweep(cfg810, "received_power", [5.0, 10.0])
        assert isinstance(rows[0].result, MppSample)
        assert rows[1].result.p_m == pytest.approx(5.179, abs=1e-12)
        phys = cfg810.with_(path="physical_model")
        rows = sweep(phys, "voltage", [0.0, 10.0, 200.0], received_power_w=10.0)
        assert isinstance(rows[0].result, OperatingPoint)
        assert rows[2].result.i_o == 0.0

    def test_errors_are_collected(self, cfg810):
        rows = sweep(cfg810, "supply_power", [-1.0, 0.0, 40.0])
        assert rows[0].error and rows[1].error and rows[0].result is None
        assert isinstance(rows[2].result, StageReport)

    def test_parallel_keeps_order(self, cfg810):
        grid = np.linspace(0, 20, 50)
        serial = sweep(cfg810, "distance", grid)
        parallel = sweep(cfg810, "distance", grid, workers=4)
        assert [r.result for r in serial] == [r.result for r in parallel]

    @pytest.mark.parametrize("grid", [[], [2.0, 1.0]])
    def test_bad_grid(self, cfg810, grid):
        with pytest.raises(ValueError):
            sweep(cfg810, "distance", grid)
