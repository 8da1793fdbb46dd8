"""rabiwave: coherent Rabi-frequency radiation in 1D polar media.

A resonantly driven two-level system whose eigenstates carry unequal
permanent dipole moments radiates at its Rabi frequency.  This package
integrates the coupled RWA Bloch equations and the second-order 1D wave
equation for that low-frequency signal, derives realistic medium
parameters from the DC-Stark structure of a polar rotor (LiH), and
post-processes the output (spectral peaks, spatial beats).

Entry points: :func:`rabiwave.simulation.run` on a validated
:class:`rabiwave.params.Scenario` (see :mod:`rabiwave.presets` for
ready-made ones), or the ``rabiwave`` command line.
"""

__version__ = "0.1.0"

from . import analysis, bloch, drive, mathkit, params, presets, simulation, stark, units, wavesolver
from .params import ConfigError, GridSpec, MediumParams, Scenario, validate_config
from .presets import PRESETS, get_preset
from .simulation import InstabilityError, RunResult, run

__all__ = [
    "__version__",
    "analysis", "bloch", "drive", "mathkit", "params", "presets",
    "simulation", "stark", "units", "wavesolver",
    "ConfigError", "GridSpec", "MediumParams", "Scenario", "validate_config",
    "PRESETS", "get_preset", "InstabilityError", "RunResult", "run",
]
