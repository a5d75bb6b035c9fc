"""Exception types raised by the simulator."""

from __future__ import annotations


class DomainError(ValueError):
    """An input lies outside the domain where a model relation is defined."""


class VisibilityGapError(DomainError):
    """Visibility falls between the fog and haze branches of the scattering model."""


class UnreachableTargetError(DomainError):
    """A requested efficiency is above what the link delivers even at zero distance."""

    def __init__(self, eta_target: float, eta_max: float):
        self.eta_target = eta_target
        self.eta_max = eta_max
        super().__init__(
            f"target efficiency {eta_target:.6g} is unreachable; "
            f"maximum at d=0 is {eta_max:.6g}"
        )


class CalibrationError(DomainError):
    """Calibration data would overflow the diode exponential."""


class DegenerateFitError(DomainError):
    """Too few samples, or no spread in x, for a line fit."""
