"""Transmitter stage: electricity-to-laser conversion."""

from __future__ import annotations

from dataclasses import dataclass

from .constants import CONSTANTS, PhysicalConstants, Wavelength
from .errors import DomainError

__all__ = [
    "LaserDiodeParams",
    "DrivePoint",
    "supply_power",
    "laser_power_from_current",
    "laser_power_from_supply",
    "supply_threshold",
    "eta_el",
]


@dataclass(frozen=True)
class LaserDiodeParams:
    """LI-curve parameters of a laser source and its fitted supply-power line.

    ``a1`` and ``b1`` describe ``P_l ~ a1 * P_s + b1`` and are stored as given,
    not refit from ``zeta`` and ``i_th``.
    """

    wavelength: Wavelength
    zeta: float
    i_th: float
    a1: float
    b1: float

    def __post_init__(self):
        if not self.zeta > 0:
            raise DomainError(f"zeta must be positive, got {self.zeta}")
        if not self.i_th > 0:
            raise DomainError(f"threshold current must be positive, got {self.i_th}")
        if not 0 < self.a1 < 1:
            raise DomainError(f"slope a1 must lie in (0, 1), got {self.a1}")

    def slope_efficiency(self, constants: PhysicalConstants = CONSTANTS) -> float:
        """dP_l/dI_t above threshold, in W/A."""
        return self.zeta * self.wavelength.photon_voltage(constants)


@dataclass(frozen=True)
class DrivePoint:
    i_t: float
    v_t: float

    def __post_init__(self):
        if self.i_t < 0 or self.v_t < 0:
            raise DomainError(f"drive current and voltage must be >= 0, got {self}")


def supply_power(drive: DrivePoint) -> float:
    return drive.i_t * drive.v_t


def laser_power_from_current(
    params: LaserDiodeParams, i_t: float, constants: PhysicalConstants = CONSTANTS
) -> float:
    """Optical output power for drive current ``i_t``.

    Zero at and below the threshold current, linear above it with slope
    ``zeta * h * nu / q``.
    """
    if i_t < 0:
        raise DomainError(f"drive current must be >= 0, got {i_t}")
    if i_t <= params.i_th:
        return 0.0
    return params.slope_efficiency(constants) * (i_t - params.i_th)


def supply_threshold(params: LaserDiodeParams) -> float:
    """Supply power below which the fitted line predicts no laser output."""
    return -params.b1 / params.a1


def laser_power_from_supply(params: LaserDiodeParams, p_s: float) -> float:
    if p_s < 0:
        raise DomainError(f"supply power must be >= 0, got {p_s}")
    return max(0.0, params.a1 * p_s + params.b1)


def eta_el(params: LaserDiodeParams, p_s: float) -> float:
    """Electricity-to-laser efficiency ``a1 + b1/p_s``, clamped to [0, 1]."""
    if not p_s > 0:
        raise DomainError(f"supply power must be positive, got {p_s}")
    return min(1.0, max(0.0, params.a1 + params.b1 / p_s))
