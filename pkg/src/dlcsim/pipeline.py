"""End-to-end composition of the three stages.

Two evaluation paths exist. ``CLOSED_FORM`` chains the fitted lines of the
laser and PV stages with the exponential transmission; its overall efficiency
is algebraically identical to :func:`eta_om`. ``PHYSICAL_MODEL`` replaces the
fitted PV line with a maximum-power-point search on the single-diode curve.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from scipy import optimize

from . import atmosphere, laser, pv
from .atmosphere import AtmosphereCondition
from .constants import celsius_to_kelvin
from .errors import DomainError, UnreachableTargetError
from .laser import LaserDiodeParams
from .pv import FittedMppLine, OperatingPoint, PvPanelParams

__all__ = [
    "EvalPath",
    "SweepAxis",
    "ScenarioConfig",
    "StageReport",
    "MppSample",
    "SweepRow",
    "run_scenario",
    "pm_vs_ps",
    "eta_om",
    "eta_om_raw",
    "coverage_radius",
    "count_sign_changes",
    "sweep",
]


class EvalPath(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    PHYSICAL_MODEL = "physical_model"


class SweepAxis(str, enum.Enum):
    SUPPLY_POWER = "supply_power"
    DISTANCE = "distance"
    RECEIVED_POWER = "received_power"
    VOLTAGE = "voltage"
    TRANSMISSION_EFFICIENCY = "transmission_efficiency"


@dataclass(frozen=True)
class ScenarioConfig:
    diode: LaserDiodeParams
    condition: AtmosphereCondition
    panel: PvPanelParams
    mpp_lines: tuple[FittedMppLine, ...]
    p_s: float
    d_km: float
    t_cell_c: float
    path: EvalPath = EvalPath.CLOSED_FORM

    def __post_init__(self):
        object.__setattr__(self, "path", EvalPath(self.path))
        object.__setattr__(self, "mpp_lines", tuple(self.mpp_lines))
        if self.diode.wavelength != self.panel.wavelength:
            raise DomainError("laser diode and PV panel are configured for different wavelengths")
        if not self.p_s > 0:
            raise DomainError(f"supply power must be positive, got {self.p_s}")
        if self.d_km < 0:
            raise DomainError(f"distance must be >= 0, got {self.d_km}")

    @classmethod
    def from_presets(
        cls,
        wavelength_nm: int,
        *,
        p_s: float = 40.0,
        d_km: float = 0.0,
        t_cell_c: float = 25.0,
        regime: atmosphere.Regime | str = atmosphere.Regime.CLEAR_AIR,
        kappa_km: float | None = None,
        path: EvalPath | str = EvalPath.CLOSED_FORM,
    ) -> "ScenarioConfig":
        from . import presets

        return cls(
            diode=presets.laser_diode(wavelength_nm),
            condition=presets.atmosphere(regime, kappa_km),
            panel=presets.pv_panel(wavelength_nm),
            mpp_lines=presets.mpp_lines(wavelength_nm),
            p_s=p_s,
            d_km=d_km,
            t_cell_c=t_cell_c,
            path=path,
        )

    @property
    def wavelength(self):
        return self.diode.wavelength

    @property
    def mpp_line(self) -> FittedMppLine:
        return pv.mpp_line_at(self.mpp_lines, self.t_cell_c)

    def transmission(self, d_km: float | None = None) -> float:
        return atmosphere.eta_lt(self.condition, self.wavelength, self.d_km if d_km is None else d_km)

    def with_(self, **changes) -> "ScenarioConfig":
        return replace(self, **changes)


@dataclass(frozen=True)
class StageReport:
    p_s: float
    p_l: float
    p_r: float
    p_m: float
    eta_el: float
    eta_lt: float
    eta_le: float
    eta_o: float
    below_threshold: bool = False
    raw_eta_o: float = field(default=math.nan, repr=False, compare=False)

    @property
    def status(self) -> str:
        return "below_threshold" if self.below_threshold else "ok"


@dataclass(frozen=True)
class MppSample:
    p_r: float
    p_m: float
    eta_lem: float


@dataclass(frozen=True)
class SweepRow:
    x: float
    result: StageReport | OperatingPoint | MppSample | None
    error: str | None = None


def _receiver_mpp(cfg: ScenarioConfig, p_r: float) -> float:
    if cfg.path is EvalPath.CLOSED_FORM:
        return pv.mpp_from_fit(cfg.mpp_line, p_r)
    if p_r == 0:
        return 0.0
    return pv.find_mpp(cfg.panel, p_r, celsius_to_kelvin(cfg.t_cell_c)).p_o


def _chain(cfg: ScenarioConfig, eta_lt: float) -> StageReport:
    p_s = cfg.p_s
    p_l = laser.laser_power_from_supply(cfg.diode, p_s)
    p_r = eta_lt * p_l
    p_m = _receiver_mpp(cfg, p_r)
    eta_el = laser.eta_el(cfg.diode, p_s)
    eta_le = p_m / p_r if p_r > 0 else 0.0
    return StageReport(
        p_s=p_s,
        p_l=p_l,
        p_r=p_r,
        p_m=p_m,
        eta_el=eta_el,
        eta_lt=eta_lt,
        eta_le=eta_le,
        eta_o=p_m / p_s,
        below_threshold=p_l == 0.0,
        raw_eta_o=eta_om_raw(cfg, p_s, eta_lt) if cfg.path is EvalPath.CLOSED_FORM else p_m / p_s,
    )


def run_scenario(cfg: ScenarioConfig) -> StageReport:
    """Per-stage powers and efficiencies for one scenario."""
    return _chain(cfg, cfg.transmission())


def pm_vs_ps(cfg: ScenarioConfig, p_s: float, eta_lt: float | None = None) -> float:
    """Maximum receiver output as an affine function of supply power, clamped at 0.

    ``eta_lt`` defaults to the scenario's own transmission over ``cfg.d_km``.
    """
    if eta_lt is None:
        eta_lt = cfg.transmission()
    a1, b1 = cfg.diode.a1, cfg.diode.b1
    line = cfg.mpp_line
    return max(0.0, a1 * line.a2 * eta_lt * p_s + (line.a2 * b1 * eta_lt + line.b2))


def eta_om_raw(cfg: ScenarioConfig, p_s: float, eta_lt: float | None = None) -> float:
    if not p_s > 0:
        raise DomainError(f"supply power must be positive, got {p_s}")
    if eta_lt is None:
        eta_lt = cfg.transmission()
    a1, b1 = cfg.diode.a1, cfg.diode.b1
    line = cfg.mpp_line
    return a1 * line.a2 * eta_lt + (line.a2 * b1 * eta_lt + line.b2) / p_s


def eta_om(cfg: ScenarioConfig, p_s: float | None = None, eta_lt: float | None = None) -> float:
    """Closed-form maximum end-to-end efficiency, clamped to [0, 1]."""
    return min(1.0, max(0.0, eta_om_raw(cfg, cfg.p_s if p_s is None else p_s, eta_lt)))


def coverage_radius(cfg: ScenarioConfig, eta_target: float, xtol: float = 1e-6) -> float:
    """Distance in km at which the closed-form maximum efficiency drops to ``eta_target``.

    Raises
    ------
    UnreachableTargetError
        If the target is not below the efficiency at zero distance. The
        exception carries that maximum as ``eta_max``.
    """
    if not eta_target > 0:
        raise DomainError(f"target efficiency must be positive, got {eta_target}")
    eta_max = eta_om(cfg, eta_lt=1.0)
    if eta_target >= eta_max:
        raise UnreachableTargetError(eta_target, eta_max)

    def excess(d: float) -> float:
        return eta_om(cfg.with_(d_km=d)) - eta_target

    hi = 1.0
    while excess(hi) >= 0:
        hi *= 2.0
        if hi > 1e6:
            raise DomainError("target efficiency is never reached within 1e6 km")
    return optimize.bisect(excess, 0.0, hi, xtol=xtol)


def count_sign_changes(values: Sequence[float]) -> int:
    """Number of strict sign flips, skipping exact zeros."""
    changes = 0
    prev = 0.0
    for v in values:
        if v == 0:
            continue
        if prev != 0 and (v > 0) != (prev > 0):
            changes += 1
        prev = v
    return changes


def _sweep_point(cfg: ScenarioConfig, axis: SweepAxis, x: float, received_power_w: float | None):
    if axis is SweepAxis.SUPPLY_POWER:
        return run_scenario(cfg.with_(p_s=x))
    if axis is SweepAxis.DISTANCE:
        return run_scenario(cfg.with_(d_km=x))
    if axis is SweepAxis.TRANSMISSION_EFFICIENCY:
        if not 0 <= x <= 1:
            raise DomainError(f"transmission efficiency must lie in [0, 1], got {x}")
        return _chain(cfg, x)
    if axis is SweepAxis.RECEIVED_POWER:
        if not x > 0:
            raise DomainError(f"received power must be positive, got {x}")
        p_m = _receiver_mpp(cfg, x)
        return MppSample(p_r=x, p_m=p_m, eta_lem=pv.eta_le(p_m, x))
    if axis is SweepAxis.VOLTAGE:
        p_r = run_scenario(cfg).p_r if received_power_w is None else received_power_w
        return pv.iv_curve(cfg.panel, p_r, celsius_to_kelvin(cfg.t_cell_c), x)
    raise ValueError(f"unknown sweep axis {axis!r}")


def sweep(
    cfg: ScenarioConfig,
    axis: SweepAxis | str,
    grid: Sequence[float],
    *,
    received_power_w: float | None = None,
    workers: int | None = None,
) -> list[SweepRow]:
    """Evaluate the scenario at every grid value along ``axis``.

    Per-point domain errors are recorded on the row instead of aborting the
    sweep. Rows come back in grid order even when ``workers > 1``.
    """
    axis = SweepAxis(axis)
    grid = [float(g) for g in grid]
    if not grid:
        raise ValueError("sweep grid is empty")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError("sweep grid must be sorted ascending")

    def point(x: float) -> SweepRow:
        try:
            return SweepRow(x, _sweep_point(cfg, axis, x, received_power_w))
        except DomainError as exc:
            return SweepRow(x, None, str(exc))

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(point, grid))
    return [point(x) for x in grid]
