"""Scattering amplitudes, spectral singularities and bound states of the
complex Scarf II potential, with a transfer-matrix cross-check."""

__version__ = "0.1.0"

from .analytic_scattering import amplitudes, observables, reflection_amplitudes, transmission_amplitude
from .errors import ScarfError
from .invariance_suite import InvarianceReport, run_report
from .numeric_oracle import SampledPotential, sample_scarf, solve, time_reversed_observables
from .scarf_model import (
    HamiltonianClass,
    PotentialCoefficients,
    ScarfParameters,
    classify,
    coefficients,
    evaluate_potential,
    from_parametrization,
)
from .special_functions import complex_gamma, log_complex_gamma, safe_trig_ratio
from .spectral_analysis import bound_states, confirm_pole, enumerate_spectrum, find_spectral_singularities

__all__ = [
    "HamiltonianClass",
    "InvarianceReport",
    "PotentialCoefficients",
    "SampledPotential",
    "ScarfError",
    "ScarfParameters",
    "amplitudes",
    "bound_states",
    "classify",
    "coefficients",
    "complex_gamma",
    "confirm_pole",
    "enumerate_spectrum",
    "evaluate_potential",
    "find_spectral_singularities",
    "from_parametrization",
    "log_complex_gamma",
    "observables",
    "reflection_amplitudes",
    "run_report",
    "safe_trig_ratio",
    "sample_scarf",
    "solve",
    "time_reversed_observables",
    "transmission_amplitude",
]
