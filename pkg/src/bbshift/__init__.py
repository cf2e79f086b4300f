"""Blackbody radiation shifts of a charged harmonic oscillator.

Thermal energy, free-energy, and frequency shifts of a three-dimensional
charged oscillator coupled to blackbody radiation, computed by mode counting
in the dispersive medium the oscillators themselves create. All internal
math is dimensionless; converters to and from lab units are provided.
"""

__version__ = "0.1.0"

from .constants import CODATA2018, GaussianConstants
from .energies import (
    CutoffTruncationWarning,
    EnergyBreakdown,
    ZeroPointDifference,
    delta_e,
    delta_e_asymptotic,
    energy_breakdown,
    free_energy_shift,
    full_vs_perturbative,
    oscillator_energy,
    rydberg_frequency_shift,
    thermo_residual,
    u0_per_volume,
    u1,
    u2,
    zero_point_difference,
)
from .model import (
    ComplexResponse,
    DimensionlessParams,
    PhysicalInput,
    ValidityError,
    mode_weight,
    mode_weight_excess,
    planck_occupation,
    planck_occupation_with_zero_point,
    polarizability,
    reduce,
    refractive_index,
)
from .quadrature import (
    MomentSpec,
    QuadratureBudgetError,
    QuadratureResult,
    integrate_adaptive,
    narrow_resonance_estimate,
    planck_lorentzian_moment,
    riemann_oracle,
)
from .sweep import GridSpec, SweepTable, run_sweep

__all__ = [
    "__version__",
    "CODATA2018",
    "GaussianConstants",
    "ComplexResponse",
    "DimensionlessParams",
    "PhysicalInput",
    "ValidityError",
    "polarizability",
    "refractive_index",
    "mode_weight",
    "mode_weight_excess",
    "planck_occupation",
    "planck_occupation_with_zero_point",
    "reduce",
    "QuadratureResult",
    "QuadratureBudgetError",
    "MomentSpec",
    "integrate_adaptive",
    "planck_lorentzian_moment",
    "narrow_resonance_estimate",
    "riemann_oracle",
    "EnergyBreakdown",
    "ZeroPointDifference",
    "CutoffTruncationWarning",
    "u0_per_volume",
    "u1",
    "u2",
    "oscillator_energy",
    "delta_e",
    "delta_e_asymptotic",
    "free_energy_shift",
    "thermo_residual",
    "full_vs_perturbative",
    "zero_point_difference",
    "rydberg_frequency_shift",
    "energy_breakdown",
    "GridSpec",
    "SweepTable",
    "run_sweep",
]
