"""Free-space transmission of the laser beam under clear air, haze and fog.

Extinction follows Beer-Lambert with a visibility-driven attenuation
coefficient. Distances are in kilometers and wavelengths in nanometers so the
coefficient comes out in 1/km.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .constants import Wavelength
from .errors import DomainError, VisibilityGapError

__all__ = [
    "Regime",
    "AtmosphereCondition",
    "VISIBILITY_RANGES_KM",
    "size_distribution_rho",
    "attenuation_coefficient",
    "eta_lt",
]


class Regime(str, enum.Enum):
    CLEAR_AIR = "clear_air"
    HAZE = "haze"
    FOG = "fog"


# (lower, upper, lower bound inclusive)
VISIBILITY_RANGES_KM = {
    Regime.CLEAR_AIR: (6.0, 50.0, True),
    Regime.HAZE: (1.0, 6.0, True),
    Regime.FOG: (0.0, 0.5, False),
}
_GAP_KM = (0.5, 1.0)


@dataclass(frozen=True)
class AtmosphereCondition:
    regime: Regime
    kappa_km: float
    sigma: float = 3.92
    chi_nm: float = 550.0

    def __post_init__(self):
        object.__setattr__(self, "regime", Regime(self.regime))
        lo, hi, closed = VISIBILITY_RANGES_KM[self.regime]
        k = self.kappa_km
        if _GAP_KM[0] < k < _GAP_KM[1]:
            raise VisibilityGapError(
                f"visibility {k} km lies in the undefined gap "
                f"({_GAP_KM[0]}, {_GAP_KM[1]}) km between fog and haze"
            )
        inside = (lo <= k if closed else lo < k) and k <= hi
        if not inside:
            raise DomainError(
                f"visibility {k} km outside the {self.regime.value} range "
                f"{'[' if closed else '('}{lo}, {hi}] km"
            )

    @classmethod
    def from_visibility(cls, kappa_km: float, **kwargs) -> "AtmosphereCondition":
        """Pick the regime from the visibility alone (6 km counts as clear air)."""
        if kappa_km >= 6.0:
            regime = Regime.CLEAR_AIR
        elif kappa_km >= 1.0:
            regime = Regime.HAZE
        else:
            regime = Regime.FOG
        return cls(regime, kappa_km, **kwargs)


def size_distribution_rho(cond: AtmosphereCondition) -> float:
    if cond.regime is Regime.CLEAR_AIR:
        return 1.3
    if cond.regime is Regime.HAZE:
        return 0.16 * cond.kappa_km + 0.34
    return 0.0


def attenuation_coefficient(cond: AtmosphereCondition, wl: Wavelength) -> float:
    """Extinction coefficient in 1/km."""
    rho = size_distribution_rho(cond)
    # multiply by 1/kappa: keeps sigma/kappa = 9.8 exact in floating point for fog
    return cond.sigma * (1.0 / cond.kappa_km) * (wl.lambda_nm / cond.chi_nm) ** (-rho)


def eta_lt(cond: AtmosphereCondition, wl: Wavelength, d_km: float) -> float:
    if d_km < 0:
        raise DomainError(f"distance must be >= 0, got {d_km} km")
    return math.exp(-attenuation_coefficient(cond, wl) * d_km)
