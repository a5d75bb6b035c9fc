"""Receiver stage: single-diode PV panel, maximum power point and fitted MPP lines.

The panel is ``n_series`` identical cells in series with no series or shunt
resistance. Photocurrent scales linearly with received power through the
``p_r_ref`` calibration scalar. The saturation current is obtained by
inverting the diode equation at open circuit under calibration conditions and
is carried to other temperatures with the usual solar-cell scaling

    I_s(T) = I_s(T_ref) * (T/T_ref)**(XTI/n) * exp(E_g * (T/T_ref - 1) / (n*k*T/q))

with bandgap ``E_g`` in eV and temperature exponent ``XTI``.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, replace

import numpy as np
from scipy import optimize

from .constants import CONSTANTS, PhysicalConstants, Wavelength, celsius_to_kelvin
from .errors import CalibrationError, DomainError

__all__ = [
    "PvPanelParams",
    "FittedMppLine",
    "OperatingPoint",
    "DiodeState",
    "FIT_TEMPERATURE_RANGE_C",
    "thermal_voltage",
    "calibrate_diode",
    "diode_state",
    "photocurrent",
    "panel_current",
    "open_circuit_voltage",
    "iv_curve",
    "golden_section_max",
    "find_mpp",
    "calibrate_reference_power",
    "mpp_from_fit",
    "mpp_line_at",
    "eta_le",
    "eta_lem",
]

EXPONENT_CAP = 700.0
FIT_TEMPERATURE_RANGE_C = (0.0, 50.0)


@dataclass(frozen=True)
class PvPanelParams:
    """Single-diode calibration of a PV panel.

    ``i_sc0`` and ``v_oc_cell`` are the measured short-circuit current and
    per-cell open-circuit voltage at calibration temperature ``t_ref`` (K)
    under received power ``p_r_ref`` (W). ``irradiance_ref`` is the
    measurement irradiance in W/cm2 and is informational only.
    """

    wavelength: Wavelength
    i_sc0: float
    v_oc_cell: float
    irradiance_ref: float
    p_r_ref: float
    n_ideality: float
    n_series: int
    t_ref: float
    material: str = ""
    bandgap_ev: float = 1.11
    is_temp_exponent: float = 3.0

    def __post_init__(self):
        if not (self.i_sc0 > 0 and self.v_oc_cell > 0 and self.p_r_ref > 0):
            raise DomainError("i_sc0, v_oc_cell and p_r_ref must be positive")
        if self.n_ideality < 1:
            raise DomainError(f"ideality factor must be >= 1, got {self.n_ideality}")
        if self.n_series < 1:
            raise DomainError(f"need at least one series cell, got {self.n_series}")
        if not self.t_ref > 0:
            raise DomainError(f"calibration temperature must be positive, got {self.t_ref} K")


@dataclass(frozen=True)
class FittedMppLine:
    """Linear fit ``P_m ~ a2 * P_r + b2`` at one cell temperature."""

    temperature_c: float
    a2: float
    b2: float


@dataclass(frozen=True)
class OperatingPoint:
    v_o: float
    i_o: float
    p_o: float


@dataclass(frozen=True)
class DiodeState:
    i_s: float  # A
    v_m: float  # V per cell


def thermal_voltage(n_ideality: float, t: float, constants: PhysicalConstants = CONSTANTS) -> float:
    if not t > 0:
        raise DomainError(f"absolute temperature must be positive, got {t} K")
    return n_ideality * constants.boltzmann_k * t / constants.electron_charge_q


def calibrate_diode(params: PvPanelParams, exponent_cap: float = EXPONENT_CAP) -> DiodeState:
    """Saturation current that zeroes the output current at the reference open circuit."""
    v_m = thermal_voltage(params.n_ideality, params.t_ref)
    x = params.v_oc_cell / v_m
    if x > exponent_cap:
        raise CalibrationError(
            f"V_oc/V_m = {x:.1f} exceeds the exponent cap {exponent_cap}; "
            "check the open-circuit voltage and ideality factor"
        )
    return DiodeState(i_s=params.i_sc0 / math.expm1(x), v_m=v_m)


def diode_state(params: PvPanelParams, t: float) -> DiodeState:
    """Saturation current and thermal voltage at absolute temperature ``t``."""
    ref = calibrate_diode(params)
    v_m = thermal_voltage(params.n_ideality, t)
    ratio = t / params.t_ref
    i_s = (
        ref.i_s
        * ratio ** (params.is_temp_exponent / params.n_ideality)
        * math.exp(params.bandgap_ev * (ratio - 1.0) / v_m)
    )
    return DiodeState(i_s=i_s, v_m=v_m)


def photocurrent(params: PvPanelParams, p_r: float) -> float:
    if p_r < 0:
        raise DomainError(f"received power must be >= 0, got {p_r}")
    return params.i_sc0 * p_r / params.p_r_ref


def panel_current(params: PvPanelParams, p_r: float, t: float, v_o_panel, state: DiodeState | None = None):
    """Panel current at panel voltage(s) ``v_o_panel``, clamped at zero past open circuit.

    Accepts scalars or numpy arrays for the voltage.
    """
    if state is None:
        state = diode_state(params, t)
    v_cell = np.asarray(v_o_panel, dtype=float) / params.n_series
    i_o = photocurrent(params, p_r) - state.i_s * np.expm1(v_cell / state.v_m)
    return np.maximum(i_o, 0.0)


def open_circuit_voltage(params: PvPanelParams, p_r: float, t: float) -> float:
    """Panel-level open-circuit voltage."""
    state = diode_state(params, t)
    return params.n_series * state.v_m * math.log1p(photocurrent(params, p_r) / state.i_s)


def iv_curve(params: PvPanelParams, p_r: float, t: float, v_o_panel: float) -> OperatingPoint:
    if v_o_panel < 0:
        raise DomainError(f"panel voltage must be >= 0, got {v_o_panel}")
    i_o = float(panel_current(params, p_r, t, v_o_panel))
    return OperatingPoint(v_o=v_o_panel, i_o=i_o, p_o=i_o * v_o_panel)


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-6) -> float:
    """Maximizer of a unimodal ``f`` on ``[lo, hi]`` to within ``tol`` in x."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return c if fc >= fd else d


def find_mpp(params: PvPanelParams, p_r: float, t: float, tol: float = 1e-6) -> OperatingPoint:
    """Maximum power point of the panel at received power ``p_r`` and temperature ``t`` (K).

    The power curve is unimodal on ``[0, V_oc]``, so a golden-section search
    is enough; ``tol`` is the voltage resolution in volts.
    """
    if not p_r > 0:
        raise DomainError(f"received power must be positive, got {p_r}")
    state = diode_state(params, t)
    v_oc = params.n_series * state.v_m * math.log1p(photocurrent(params, p_r) / state.i_s)

    def power(v: float) -> float:
        return v * float(panel_current(params, p_r, t, v, state))

    v_best = golden_section_max(power, 0.0, v_oc, tol)
    i_best = float(panel_current(params, p_r, t, v_best, state))
    return OperatingPoint(v_o=v_best, i_o=i_best, p_o=v_best * i_best)


def calibrate_reference_power(
    params: PvPanelParams, p_r: float, t: float, target_p_m: float, bracket=(1e-3, 1e4)
) -> float:
    """Value of ``p_r_ref`` for which ``find_mpp(params, p_r, t).p_o == target_p_m``."""
    def residual(p_ref: float) -> float:
        return find_mpp(replace(params, p_r_ref=p_ref), p_r, t).p_o - target_p_m

    return optimize.brentq(residual, *bracket, xtol=1e-12, rtol=1e-14)


def mpp_from_fit(line: FittedMppLine, p_r: float) -> float:
    if p_r < 0:
        raise DomainError(f"received power must be >= 0, got {p_r}")
    return max(0.0, line.a2 * p_r + line.b2)


def mpp_line_at(lines: Sequence[FittedMppLine], t_c: float) -> FittedMppLine:
    """Fitted line at cell temperature ``t_c``, linearly interpolated between tabulated rows.

    Extrapolation outside the tabulated temperatures raises ``DomainError``.
    """
    rows = sorted(lines, key=lambda ln: ln.temperature_c)
    if not rows:
        raise DomainError("no fitted MPP lines available")
    lo, hi = rows[0].temperature_c, rows[-1].temperature_c
    if not lo <= t_c <= hi:
        raise DomainError(f"cell temperature {t_c} C outside fitted range [{lo}, {hi}] C")
    for row in rows:
        if row.temperature_c == t_c:
            return row
    for left, right in zip(rows, rows[1:]):
        if left.temperature_c < t_c < right.temperature_c:
            w = (t_c - left.temperature_c) / (right.temperature_c - left.temperature_c)
            return FittedMppLine(
                temperature_c=t_c,
                a2=left.a2 + w * (right.a2 - left.a2),
                b2=left.b2 + w * (right.b2 - left.b2),
            )
    raise AssertionError("unreachable")


def eta_le(p_o: float, p_r: float) -> float:
    if not p_r > 0:
        raise DomainError(f"received power must be positive, got {p_r}")
    if p_o < 0:
        raise DomainError(f"output power must be >= 0, got {p_o}")
    return p_o / p_r


def eta_lem(line: FittedMppLine, p_r: float) -> float:
    """Maximum laser-to-electricity efficiency ``a2 + b2/p_r``, clamped to [0, 1]."""
    if not p_r > 0:
        raise DomainError(f"received power must be positive, got {p_r}")
    return min(1.0, max(0.0, line.a2 + line.b2 / p_r))

