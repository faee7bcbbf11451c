# # File: heun_pulses/__init__.py
"""
heun_pulses – exactly solvable two-level pulses, Heun-function amplitudes and XUV estimates
"""
# ---------------------------------------------------------------------------
# Imports
from importlib.metadata import version, PackageNotFoundError

# ---------------------------------------------------------------------------
# Public API re-exports
# ---------------------------------------------------------------------------

from heun_pulses.main import main
from heun_pulses.pulses import DimensionlessParams, PhaseMap, PulseKind, PulseSpec
from heun_pulses.dynamics import (IntegratorConfig, Trajectory, analytic_trajectory, evolve_numeric,
                                  final_population)

__all__ = [
    "main",
    "DimensionlessParams",
    "PhaseMap",
    "PulseKind",
    "PulseSpec",
    "IntegratorConfig",
    "Trajectory",
    "analytic_trajectory",
    "evolve_numeric",
    "final_population",
    "__version__",
]

try:
    __version__ = version("heun_pulses")
except PackageNotFoundError:        # running from a checkout / no wheel yet
    __version__ = "0.0.0.dev0"
