"""Datasets behind each reproduced figure, one column per plotted series.

Every builder takes a base :class:`ScenarioConfig` (wavelength, temperature,
condition, supply power and path are read from it where the figure does not
sweep them) and an optional x grid. Values are direct model calls; CSV
formatting happens in :func:`to_csv`.

Default grids
-------------
================  ======================================  =====================
figure id         x axis                                  default grid
================  ======================================  =====================
eta_el_vs_ps      supply power [W]                        1..100 W, 100 points
eta_lt_vs_d       distance [km]                           0..5 km, 501 points
iv_vs_v           panel voltage [V]                       0..95 V, 951 points
p_vs_v            panel voltage [V]                       0..95 V, 951 points
pm_vs_pr          received power [W]                      2..20 W, 19 points
eta_lem_vs_pr     received power [W]                      0.5..20 W, 40 points
pm_vs_ps          supply power [W]                        0..60 W, 61 points
eta_om_vs_ps      supply power [W]                        1..100 W, 100 points
eta_om_vs_d       distance [km]                           per condition, 401 points
eta_om_vs_eta_lt  transmission efficiency                 0..1, 101 points
================  ======================================  =====================
"""

from __future__ import annotations

import io
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from . import atmosphere, laser, presets, pv
from .atmosphere import Regime
from .constants import celsius_to_kelvin
from .errors import DomainError
from .pipeline import EvalPath, ScenarioConfig, eta_om, pm_vs_ps

__all__ = ["FigureData", "FIGURES", "DEFAULT_GRIDS", "build_figure", "to_csv", "format_value"]

TEMPERATURES_C = (0.0, 25.0, 50.0)
PV_RECEIVED_POWERS_W = (5.0, 10.0, 15.0, 20.0)
PV_TEMPERATURE_SWEEP_POWER_W = 10.0
LINK_EFFICIENCIES = (1.0, 0.5)
DISTANCE_RANGE_KM = {Regime.CLEAR_AIR: 40.0, Regime.HAZE: 10.0, Regime.FOG: 0.5}


@dataclass
class FigureData:
    figure_id: str
    x_name: str
    x: np.ndarray
    columns: dict[str, np.ndarray]

    @property
    def n_rows(self) -> int:
        return len(self.x)


def format_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".6g")


def to_csv(data: FigureData) -> str:
    buf = io.StringIO()
    names = [data.x_name, *data.columns]
    buf.write(",".join(names) + "\n")
    cols = list(data.columns.values())
    for i, x in enumerate(data.x):
        buf.write(",".join([format_value(x), *(format_value(c[i]) for c in cols)]) + "\n")
    return buf.getvalue()


def _lam(nm: int) -> str:
    return f"{nm}nm"


def _temp(t: float) -> str:
    return f"{t:g}C"


def _cfg(base: ScenarioConfig, nm: int, **changes) -> ScenarioConfig:
    fresh = ScenarioConfig.from_presets(
        nm,
        p_s=base.p_s,
        d_km=base.d_km,
        t_cell_c=base.t_cell_c,
        regime=base.condition.regime,
        kappa_km=base.condition.kappa_km,
        path=base.path,
    )
    return fresh.with_(**changes)


def _base_nm(base: ScenarioConfig) -> int:
    return int(base.wavelength.lambda_nm)


def eta_el_vs_ps(base: ScenarioConfig, x: np.ndarray) -> dict[str, np.ndarray]:
    return {
        f"eta_el_{_lam(nm)}": np.array([laser.eta_el(presets.laser_diode(nm), p) for p in x])
        for nm in presets.WAVELENGTHS_NM
    }


def eta_lt_vs_d(base: ScenarioConfig, x: np.ndarray) -> dict[str, np.ndarray]:
    cols = {}
    for regime in Regime:
        cond = presets.atmosphere(regime)
        for nm in presets.WAVELENGTHS_NM:
            wl = presets.wavelength(nm)
            cols[f"eta_lt_{_lam(nm)}_{regime.value}"] = np.array(
                [atmosphere.eta_lt(cond, wl, d) for d in x]
            )
    return cols


def _pv_series(base: ScenarioConfig, x: np.ndarray, quantity: str) -> dict[str, np.ndarray]:
    nm = _base_nm(base)
    panel = presets.pv_panel(nm)
    series = [(p_r, base.t_cell_c) for p_r in PV_RECEIVED_POWERS_W]
    series += [(PV_TEMPERATURE_SWEEP_POWER_W, t) for t in TEMPERATURES_C]
    cols = {}
    for p_r, t_c in series:
        i_o = pv.panel_current(panel, p_r, celsius_to_kelvin(t_c), x)
        values = i_o if quantity == "i_o" else i_o * x
        cols[f"{quantity}_{_lam(nm)}_{p_r:g}W_{_temp(t_c)}"] = np.asarray(values, dtype=float)
    return cols


def iv_vs_v(base: ScenarioConfig, x: np.ndarray) -> dict[str, np.ndarray]:
    return _pv_series(base, x, "i_o")


def p_vs_v(base: ScenarioConfig, x: np.ndarray) -> dict[str, np.ndarray]:
    return _pv_series(base, x, "p_o")


def _pm_of_pr(cfg: ScenarioConfig, p_r: float) -> float:
    if cfg.path is EvalPath.CLOSED_FORM:
        return pv.mpp_from_fit(cfg.mpp_line, p_r)
    return pv.find_mpp(cfg.panel, p_r, celsius_to_kelvin(cfg.t_cell_c)).p_o


def pm_vs_pr(base: ScenarioConfig, x: np.ndarray) -> dict[str, np.ndarray]:
    cols = {}
    for nm in presets.WAVELENGTHS_NM:
        for t in TEMPERATURES_C:
            cfg = _cfg(base, nm, t_cell_c=t)
            cols[f"p_m_{_lam(nm)}_{_temp(t)}"] = np.array([_pm_of_pr(cfg, p) for p in x])
    return cols


def eta_lem_vs_pr(base: ScenarioConfig, x: np.ndarray) -> dict[str, np.ndarray]:
    cols = {}
    for nm in presets.WAVELENGTHS_NM:
        for t in TEMPERATURES_C:
            cfg = _cfg(base, nm, t_cell_c=t)
            if cfg.path is EvalPath.CLOSED_FORM:
                values = [pv.eta_lem(cfg.mpp_line, p) for p in x]
            else:
                values = [pv.eta_le(_pm_of_pr(cfg, p), p) for p in x]
            cols[f"eta_lem_{_lam(nm)}_{_temp(t)}"] = np.array(values)
    return cols


def pm_vs_ps_fig(base: ScenarioConfig, x: np.ndarray) -> dict[str, np.ndarray]:
    cols = {}
    for nm in presets.WAVELENGTHS_NM:
        for eta in LINK_EFFICIENCIES:
            for t in TEMPERATURES_C:
                cfg = _cfg(base, nm, t_cell_c=t)
                cols[f"p_m_{_lam(nm)}_etalt{eta:g}_{_temp(t)}"] = np.array(
                    [pm_vs_ps(cfg, p, eta_lt=eta) for p in x]
                )
    return cols


def eta_om_vs_ps(base: ScenarioConfig, x: np.ndarray) -> dict[str, np.ndarray]:
    cols = {}
    for nm in presets.WAVELENGTHS_NM:
        for eta in LINK_EFFICIENCIES:
            for t in TEMPERATURES_C:
                cfg = _cfg(base, nm, t_cell_c=t)
                cols[f"eta_om_{_lam(nm)}_etalt{eta:g}_{_temp(t)}"] = np.array(
                    [eta_om(cfg, p, eta_lt=eta) for p in x]
                )
    return cols


def eta_om_vs_d(base: ScenarioConfig, x: np.ndarray) -> dict[str, np.ndarray]:
    cols = {}
    regime = base.condition.regime.value
    for nm in presets.WAVELENGTHS_NM:
        for t in TEMPERATURES_C:
            cfg = _cfg(base, nm, t_cell_c=t)
            cols[f"eta_om_{_lam(nm)}_{_temp(t)}_{regime}"] = np.array(
                [eta_om(cfg, eta_lt=cfg.transmission(d)) for d in x]
            )
    return cols


def eta_om_vs_eta_lt(base: ScenarioConfig, x: np.ndarray) -> dict[str, np.ndarray]:
    cols = {}
    for nm in presets.WAVELENGTHS_NM:
        for t in TEMPERATURES_C:
            cfg = _cfg(base, nm, t_cell_c=t)
            cols[f"eta_om_{_lam(nm)}_{_temp(t)}"] = np.array([eta_om(cfg, eta_lt=e) for e in x])
    return cols


def _linspace(start: float, stop: float, num: int) -> Callable[[ScenarioConfig], np.ndarray]:
    return lambda base: np.linspace(start, stop, num)


def _distance_grid(base: ScenarioConfig) -> np.ndarray:
    return np.linspace(0.0, DISTANCE_RANGE_KM[base.condition.regime], 401)


# id -> (x column name, default grid, builder)
FIGURES: dict[str, tuple[str, Callable, Callable]] = {
    "eta_el_vs_ps": ("p_s_w", _linspace(1.0, 100.0, 100), eta_el_vs_ps),
    "eta_lt_vs_d": ("d_km", _linspace(0.0, 5.0, 501), eta_lt_vs_d),
    "iv_vs_v": ("v_o_v", _linspace(0.0, 95.0, 951), iv_vs_v),
    "p_vs_v": ("v_o_v", _linspace(0.0, 95.0, 951), p_vs_v),
    "pm_vs_pr": ("p_r_w", _linspace(2.0, 20.0, 19), pm_vs_pr),
    "eta_lem_vs_pr": ("p_r_w", _linspace(0.5, 20.0, 40), eta_lem_vs_pr),
    "pm_vs_ps": ("p_s_w", _linspace(0.0, 60.0, 61), pm_vs_ps_fig),
    "eta_om_vs_ps": ("p_s_w", _linspace(1.0, 100.0, 100), eta_om_vs_ps),
    "eta_om_vs_d": ("d_km", _distance_grid, eta_om_vs_d),
    "eta_om_vs_eta_lt": ("eta_lt", _linspace(0.0, 1.0, 101), eta_om_vs_eta_lt),
}
DEFAULT_GRIDS = {fid: spec[1] for fid, spec in FIGURES.items()}


def build_figure(figure_id: str, base: ScenarioConfig, grid: Sequence[float] | None = None) -> FigureData:
    try:
        x_name, default_grid, builder = FIGURES[figure_id]
    except KeyError:
        raise KeyError(f"unknown figure id {figure_id!r}; choose from {sorted(FIGURES)}") from None
    x = default_grid(base) if grid is None else np.asarray(grid, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise DomainError("figure grid must be a non-empty 1-D sequence")
    return FigureData(figure_id, x_name, x, builder(base, x))
