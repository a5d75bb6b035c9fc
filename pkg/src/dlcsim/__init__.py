"""Distributed laser charging efficiency simulator.

The transmitter, free-space link and PV receiver are modeled as separate
stages (:mod:`dlcsim.laser`, :mod:`dlcsim.atmosphere`, :mod:`dlcsim.pv`) and
composed in :mod:`dlcsim.pipeline`. Bundled parameter sets live in
:mod:`dlcsim.presets`.
"""

from .atmosphere import AtmosphereCondition, Regime
from .constants import CONSTANTS, Wavelength, celsius_to_kelvin
from .errors import DomainError, UnreachableTargetError, VisibilityGapError
from .laser import LaserDiodeParams
from .linefit import FitResult, fit_line
from .pipeline import EvalPath, ScenarioConfig, StageReport, coverage_radius, eta_om, run_scenario, sweep
from .pv import FittedMppLine, OperatingPoint, PvPanelParams, find_mpp

__version__ = "0.1.0"
