"""Bundled parameter sets for the two laser wavelengths and three air conditions.

The JSON files under ``data/`` are the single source of these numbers; this
module only turns them into the typed parameter objects.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .atmosphere import AtmosphereCondition, Regime
from .constants import Wavelength, celsius_to_kelvin
from .errors import DomainError
from .laser import LaserDiodeParams
from .pv import FittedMppLine, PvPanelParams

__all__ = [
    "WAVELENGTHS_NM",
    "load_json",
    "wavelength",
    "laser_diode",
    "pv_panel",
    "mpp_lines",
    "atmosphere",
    "default_scenario",
]

WAVELENGTHS_NM = (810, 1550)


def load_json(name: str) -> dict:
    return json.loads(resources.files(__package__).joinpath("data").joinpath(name).read_text("utf-8"))


def _wavelength_file(nm: int | float) -> dict:
    nm = int(nm) if float(nm).is_integer() else nm
    if nm not in WAVELENGTHS_NM:
        raise DomainError(f"no preset for {nm} nm; available: {WAVELENGTHS_NM}")
    return _cached(f"wavelength_{nm}nm.json")


@lru_cache(maxsize=None)
def _cached(name: str) -> dict:
    return load_json(name)


def wavelength(nm: int | float) -> Wavelength:
    w = _wavelength_file(nm)["wavelength"]
    return Wavelength(w["lambda_nm"], w["nu_hz"])


def laser_diode(nm: int | float) -> LaserDiodeParams:
    d = _wavelength_file(nm)["laser_diode"]
    return LaserDiodeParams(wavelength(nm), d["zeta"], d["i_th_a"], d["a1"], d["b1_w"])


def pv_panel(nm: int | float, **overrides) -> PvPanelParams:
    p = _wavelength_file(nm)["pv_panel"]
    fields = dict(
        wavelength=wavelength(nm),
        i_sc0=p["i_sc0_a"],
        v_oc_cell=p["v_oc_cell_v"],
        irradiance_ref=p["irradiance_ref_w_per_cm2"],
        p_r_ref=p["p_r_ref_w"],
        n_ideality=p["n_ideality"],
        n_series=p["n_series"],
        t_ref=celsius_to_kelvin(p["t_ref_c"]),
        material=p["material"],
        bandgap_ev=p["bandgap_ev"],
        is_temp_exponent=p["is_temp_exponent"],
    )
    fields.update(overrides)
    return PvPanelParams(**fields)


def mpp_lines(nm: int | float) -> tuple[FittedMppLine, ...]:
    return tuple(
        FittedMppLine(row["temperature_c"], row["a2"], row["b2_w"])
        for row in _wavelength_file(nm)["mpp_lines"]
    )


def atmosphere(regime: Regime | str, kappa_km: float | None = None) -> AtmosphereCondition:
    """Preset air condition, optionally with a different visibility."""
    regime = Regime(regime)
    a = _cached(f"air_{regime.value}.json")
    kappa = a["kappa_km"] if kappa_km is None else kappa_km
    return AtmosphereCondition(regime, kappa, sigma=a["sigma"], chi_nm=a["chi_nm"])


def default_scenario() -> dict:
    return dict(_cached("default_scenario.json"))
