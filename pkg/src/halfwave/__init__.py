"""Pseudospectral tools for traveling waves of the 1D quartic focusing half-wave equation."""

from .spectral import (
    Field,
    Grid,
    Spectrum,
    Derivative,
    FreeFlow,
    HalfWave,
    Hilbert,
    SqrtLaplacian,
    Translate,
    apply_symbol,
    make_grid,
    resolvent,
    resolvent_bound_alpha,
    to_field,
    to_spectrum,
)
from .functionals import (
    FunctionalReport,
    boosted_energy,
    boosted_form,
    functional_report,
    hw_energy,
    integral_norms,
    rescale,
    weinstein,
)
from .solver import (
    FromProfile,
    GaussianPacket,
    NonConvergenceError,
    SolveConfig,
    WaveProfile,
    initial_guess,
    load_profile,
    petviashvili_step,
    residual_l2,
    save_profile,
    solve_profile,
    sweep,
)
from .evolution import EvolutionTrace, UnstableEvolutionError, evolve, linear_flow, nonlinear_flow
from .diagnostics import (
    CheckEntry,
    DiagnosticsReport,
    commutator_residual,
    decay_fit,
    frequency_mass_split,
    ground_state_energy_compare,
    overlap,
    pohozaev_check,
    power_law_fit,
    profile_continuity,
    scaling_suite,
    speed_of_light_residual,
    virial_rate,
)
from .greenfn import (
    decay_bound_check,
    green_eval,
    green_hat,
    green_i1,
    harmonicity_residual,
    poisson_kernel,
)
from .checks import ProfileCache, run_acceptance

__version__ = "0.1.0"

__all__ = [
    "Field", "Grid", "Spectrum", "Derivative", "FreeFlow", "HalfWave", "Hilbert",
    "SqrtLaplacian", "Translate", "apply_symbol", "make_grid", "resolvent",
    "resolvent_bound_alpha", "to_field", "to_spectrum",
    "FunctionalReport", "boosted_energy", "boosted_form", "functional_report",
    "hw_energy", "integral_norms", "rescale", "weinstein",
    "FromProfile", "GaussianPacket", "NonConvergenceError", "SolveConfig", "WaveProfile",
    "initial_guess", "load_profile", "petviashvili_step", "residual_l2", "save_profile",
    "solve_profile", "sweep",
    "EvolutionTrace", "UnstableEvolutionError", "evolve", "linear_flow", "nonlinear_flow",
    "CheckEntry", "DiagnosticsReport", "commutator_residual", "decay_fit",
    "frequency_mass_split", "ground_state_energy_compare", "overlap", "pohozaev_check",
    "power_law_fit", "profile_continuity", "scaling_suite", "speed_of_light_residual",
    "virial_rate",
    "decay_bound_check", "green_eval", "green_hat", "green_i1", "harmonicity_residual",
    "poisson_kernel",
    "ProfileCache", "run_acceptance",
]
