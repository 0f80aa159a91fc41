"""Resonance fluorescence of driven three-level atoms in the SU(3) Bloch picture."""
from .bloch import (
    BlochSystem, appendix_system, bloch_from_density, density_from_bloch, derive_system,
    steady_density, steady_state,
)
from .correlation import CorrelationVector, initial_conditions, propagate, resolvent
from .dressed import eigensystem, peak_offsets, transition_classes
from .estimator import ResonanceFluorescence
from .exceptions import (
    ConfigError, DegenerateSteadyStateError, Fluor3Error, InsufficientWindowError, PoleError,
    UnsupportedModeError,
)
from .models import (
    Configuration, DissipationMode, ModelParams, hamiltonian, jump_operators, liouvillian_apply,
    rotating_frame_residual,
)
from .spectrum import Pathway, Peak, SpectrumSeries, find_peaks, power_spectrum
from .su3 import ShiftKind, commutator, gellmann, shift

__version__ = "0.1.0"

__all__ = [
    "BlochSystem", "Configuration", "ConfigError", "CorrelationVector",
    "DegenerateSteadyStateError", "DissipationMode", "Fluor3Error", "InsufficientWindowError",
    "ModelParams", "Pathway", "Peak", "PoleError", "ResonanceFluorescence", "ShiftKind",
    "SpectrumSeries", "UnsupportedModeError", "appendix_system", "bloch_from_density",
    "commutator", "density_from_bloch", "derive_system", "eigensystem", "find_peaks",
    "gellmann", "hamiltonian", "initial_conditions", "jump_operators", "liouvillian_apply",
    "peak_offsets", "power_spectrum", "propagate", "resolvent", "rotating_frame_residual",
    "shift", "steady_density", "steady_state", "transition_classes",
]
