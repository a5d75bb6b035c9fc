"""Physical constants, wavelength presets and the one temperature conversion we need.

Constants are kept at the precision of the model's parameter table rather than
current CODATA values so that reproduced numbers stay bit-stable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "PhysicalConstants",
    "CONSTANTS",
    "Wavelength",
    "WL_810",
    "WL_1550",
    "ABSOLUTE_ZERO_C",
    "celsius_to_kelvin",
]

ABSOLUTE_ZERO_C = -273.15


@dataclass(frozen=True)
class PhysicalConstants:
    boltzmann_k: float = 1.38064852e-23  # J/K
    planck_h: float = 6.62606957e-34  # J s
    electron_charge_q: float = 1.6e-19  # C


CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class Wavelength:
    """Laser wavelength in nanometers with its configured optical frequency.

    The frequency is stored rather than derived from the speed of light so the
    photon energy matches the tabulated parameter sets exactly.
    """

    lambda_nm: float
    nu_hz: float

    def __post_init__(self):
        if not self.lambda_nm > 0:
            raise DomainError(f"wavelength must be positive, got {self.lambda_nm} nm")
        if not self.nu_hz > 0:
            raise DomainError(f"frequency must be positive, got {self.nu_hz} Hz")

    def photon_voltage(self, constants: PhysicalConstants = CONSTANTS) -> float:
        """Photon energy over electron charge, h*nu/q, in volts."""
        return constants.planck_h * self.nu_hz / constants.electron_charge_q

    @property
    def label(self) -> str:
        return f"{self.lambda_nm:g}nm"


WL_810 = Wavelength(810.0, 3.7037e14)
WL_1550 = Wavelength(1550.0, 1.9355e14)


def celsius_to_kelvin(t_c: float) -> float:
    if not t_c > ABSOLUTE_ZERO_C:
        raise DomainError(f"temperature {t_c} C is at or below absolute zero")
    return t_c + 273.15
