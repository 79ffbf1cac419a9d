"""Casimir thermodynamics of magnetodielectric parallel plates.

Lifshitz-theory Matsubara sums for the free energy and pressure per unit
area, entropy by temperature differentiation, closed-form low-temperature
expansions used as independent oracles, and the zero-frequency analysis
of the dc-conductivity contribution that decides whether the Nernst heat
theorem holds.
"""

from .asymptotics import (
    AsymptoticInput,
    delta_f_debye,
    delta_f_leading,
    delta_f_nlo,
    delta_p_debye,
    delta_p_leading,
    entropy_dc_asymptotic,
    entropy_debye,
    entropy_leading,
    entropy_nlo,
    entropy_t1_coefficient_debye,
    entropy_t2_coefficient,
    entropy_t3_coefficient,
    free_energy_dc,
    pressure_t4_coefficient,
)
from .lifshitz import (
    ConvergenceReport,
    DEFAULT_SETTINGS,
    EngineSettings,
    SmallTauWarning,
    free_energy,
    free_energy_l0,
    pressure,
    q_difference,
    reflection_te,
    reflection_tm,
    thermal_correction,
    zero_frequency_term,
    zero_point_energy,
    zero_temperature_pressure,
)
from .materials import (
    DcConductivity,
    EPS_INFINITE,
    MaterialModel,
    VACUUM,
    beta_dc,
    dimensionless_state,
    eval_eps,
    eval_mu,
    validity_ratio,
)
from .polylog import PI2_OVER_6, ZETA3, li2, li3, polylog, zeta3
from .thermodynamics import (
    DiffSettings,
    EntropyDecomposition,
    EntropyResult,
    StepUnderflowError,
    entropy,
    entropy_dc_decomposition,
    limit_at_zero_temperature,
    nernst_limit_dc,
    pressure_consistency,
)
from .units import (
    C_LIGHT,
    DimensionlessState,
    EPSILON0_SI,
    HBAR,
    K_BOLTZMANN,
    PLANCK_H,
    gaussian_conductivity_to_si,
    si_conductivity_to_gaussian,
    tau_from,
    temperature_from_tau,
    to_dimensionless,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticInput",
    "C_LIGHT",
    "ConvergenceReport",
    "DEFAULT_SETTINGS",
    "DcConductivity",
    "DiffSettings",
    "DimensionlessState",
    "EPSILON0_SI",
    "EPS_INFINITE",
    "EngineSettings",
    "EntropyDecomposition",
    "EntropyResult",
    "HBAR",
    "K_BOLTZMANN",
    "MaterialModel",
    "PI2_OVER_6",
    "PLANCK_H",
    "SmallTauWarning",
    "StepUnderflowError",
    "VACUUM",
    "ZETA3",
    "beta_dc",
    "delta_f_debye",
    "delta_f_leading",
    "delta_f_nlo",
    "delta_p_debye",
    "delta_p_leading",
    "dimensionless_state",
    "entropy",
    "entropy_dc_asymptotic",
    "entropy_dc_decomposition",
    "entropy_debye",
    "entropy_leading",
    "entropy_nlo",
    "entropy_t1_coefficient_debye",
    "entropy_t2_coefficient",
    "entropy_t3_coefficient",
    "eval_eps",
    "eval_mu",
    "free_energy",
    "free_energy_dc",
    "free_energy_l0",
    "gaussian_conductivity_to_si",
    "li2",
    "li3",
    "limit_at_zero_temperature",
    "nernst_limit_dc",
    "polylog",
    "pressure",
    "pressure_consistency",
    "pressure_t4_coefficient",
    "q_difference",
    "reflection_te",
    "reflection_tm",
    "si_conductivity_to_gaussian",
    "tau_from",
    "temperature_from_tau",
    "thermal_correction",
    "to_dimensionless",
    "validity_ratio",
    "zero_frequency_term",
    "zero_point_energy",
    "zero_temperature_pressure",
    "zeta3",
]
