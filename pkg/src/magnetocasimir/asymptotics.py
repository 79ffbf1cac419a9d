"""Closed-form low-temperature expansions for the plate-plate interaction.

Everything here is an explicit algebraic formula in the static response
parameters and the dimensionless temperature tau; nothing calls the
quadrature engine.  That keeps these results usable as independent
oracles when validating the numerics.

Unit conventions
----------------
``unit_mode="SI"`` returns J/m^2 (free-energy corrections), Pa (pressure
corrections) or J/(K m^2) (entropies).  ``unit_mode="dimensionless"``
strips the overall prefactors and returns the bracketed coefficient
times the tau power:

* free-energy corrections:  value_SI = -(hbar c / 32 pi^2 a^3) * bracket
* pressure corrections:     value_SI = -(hbar c / 32 pi^2 a^4) * bracket
* entropies:                value_SI = +(k_B / 16 pi a^2) * bracket
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .polylog import ZETA3, polylog
from .units import C_LIGHT, HBAR, K_BOLTZMANN, temperature_from_tau

__all__ = [
    "AsymptoticInput",
    "delta_f_leading",
    "entropy_leading",
    "delta_p_leading",
    "delta_f_nlo",
    "entropy_nlo",
    "delta_f_debye",
    "delta_p_debye",
    "entropy_debye",
    "free_energy_dc",
    "entropy_dc_asymptotic",
    "entropy_t2_coefficient",
    "entropy_t3_coefficient",
    "entropy_t1_coefficient_debye",
    "pressure_t4_coefficient",
]

_TAU_WARN = 0.3


@dataclass(frozen=True)
class AsymptoticInput:
    """Inputs of the expansions: static response, tau, separation.

    ``kappa_m = 0`` selects the constant-permeability formulas; a positive
    value selects the Debye-relaxation ones.  The expansions are
    asymptotic in tau << 1; a warning is emitted above 0.3.
    """

    eps0: float
    mu0: float
    tau: float
    a: float
    kappa_m: float = 0.0
    unit_mode: str = "SI"

    def __post_init__(self) -> None:
        if self.eps0 < 1.0 or self.mu0 < 1.0:
            raise ValueError("static permittivity and permeability must be >= 1")
        if self.tau < 0.0:
            raise ValueError(f"tau must be non-negative, got {self.tau!r}")
        if self.a <= 0.0:
            raise ValueError(f"separation must be positive, got {self.a!r}")
        if self.kappa_m < 0.0:
            raise ValueError(f"kappa_m must be non-negative, got {self.kappa_m!r}")
        if self.unit_mode not in ("SI", "dimensionless"):
            raise ValueError(f"unit_mode must be 'SI' or 'dimensionless', got {self.unit_mode!r}")
        if self.tau > _TAU_WARN:
            warnings.warn(
                f"tau = {self.tau:.3g} is outside the low-temperature regime; "
                "the expansions are asymptotic in tau << 1",
                stacklevel=3,
            )


def _f_prefactor(a: float) -> float:
    return HBAR * C_LIGHT / (32.0 * math.pi**2 * a**3)


def _p_prefactor(a: float) -> float:
    return HBAR * C_LIGHT / (32.0 * math.pi**2 * a**4)


def _s_prefactor(a: float) -> float:
    return K_BOLTZMANN / (16.0 * math.pi * a * a)


def _r0_sq(alpha: float) -> float:
    r = (alpha - 1.0) / (alpha + 1.0)
    return r * r


def _cubic_coeff(eps0: float, mu0: float) -> float:
    # tau^3 coefficient of the free-energy correction for constant response.
    ratio = (eps0 * mu0 - 1.0) ** 2 / ((eps0 + 1.0) * (mu0 + 1.0))
    return ZETA3 * ratio / (4.0 * math.pi**2)


def _quartic_combination(eps0: float, mu0: float) -> float:
    # (eps0 + mu0)(eps0 mu0 - 2) sqrt(eps0 mu0) + 2; vanishes for vacuum.
    return (eps0 + mu0) * (eps0 * mu0 - 2.0) * math.sqrt(eps0 * mu0) + 2.0


def _require_constant_mu(inp: AsymptoticInput) -> None:
    if inp.kappa_m != 0.0:
        raise ValueError("constant-permeability expansion called with kappa_m != 0")


def _require_debye(inp: AsymptoticInput) -> None:
    if inp.kappa_m <= 0.0:
        raise ValueError("Debye expansion requires kappa_m > 0")


def delta_f_leading(inp: AsymptoticInput) -> float:
    """Leading (tau^3) thermal correction to the free energy, constant response."""
    _require_constant_mu(inp)
    bracket = _cubic_coeff(inp.eps0, inp.mu0) * inp.tau**3
    if inp.unit_mode == "dimensionless":
        return bracket
    return -_f_prefactor(inp.a) * bracket


def entropy_leading(inp: AsymptoticInput) -> float:
    """Leading (T^2) entropy per unit area, constant response."""
    _require_constant_mu(inp)
    bracket = 6.0 * _cubic_coeff(inp.eps0, inp.mu0) * inp.tau**2
    if inp.unit_mode == "dimensionless":
        return bracket
    return _s_prefactor(inp.a) * bracket


def delta_p_leading(inp: AsymptoticInput) -> float:
    """Leading (tau^4) thermal correction to the pressure, constant response."""
    _require_constant_mu(inp)
    bracket = _quartic_combination(inp.eps0, inp.mu0) / 720.0 * inp.tau**4
    if inp.unit_mode == "dimensionless":
        return bracket
    return -_p_prefactor(inp.a) * bracket


def delta_f_nlo(inp: AsymptoticInput) -> float:
    """Free-energy correction including the next (tau^4) order, constant response."""
    _require_constant_mu(inp)
    bracket = (
        _cubic_coeff(inp.eps0, inp.mu0) * inp.tau**3
        - _quartic_combination(inp.eps0, inp.mu0) / 720.0 * inp.tau**4
    )
    if inp.unit_mode == "dimensionless":
        return bracket
    return -_f_prefactor(inp.a) * bracket


def entropy_nlo(inp: AsymptoticInput) -> float:
    """Entropy including the next (T^3) order, constant response.

    The T^2 piece is separation independent; the T^3 piece grows linearly
    with the separation.
    """
    _require_constant_mu(inp)
    bracket = (
        6.0 * _cubic_coeff(inp.eps0, inp.mu0) * inp.tau**2
        - _quartic_combination(inp.eps0, inp.mu0) / 90.0 * inp.tau**3
    )
    if inp.unit_mode == "dimensionless":
        return bracket
    return _s_prefactor(inp.a) * bracket


def delta_f_debye(inp: AsymptoticInput) -> float:
    """Leading (tau^2) free-energy correction with Debye permeability."""
    _require_debye(inp)
    li2 = polylog(2, _r0_sq(inp.mu0))
    bracket = inp.kappa_m * li2 / (3.0 * (inp.mu0 + 1.0)) * inp.tau**2
    if inp.unit_mode == "dimensionless":
        return bracket
    return -_f_prefactor(inp.a) * bracket


def delta_p_debye(inp: AsymptoticInput) -> float:
    """Leading (tau^2) pressure correction with Debye permeability.

    Equivalent SI form: -(hbar c^2 / 96 pi^2 a^5) Li2(r_te^2) tau^2 /
    (omega_m (mu0 + 1)) with omega_m recovered from kappa_m.
    """
    _require_debye(inp)
    li2 = polylog(2, _r0_sq(inp.mu0))
    bracket = 2.0 * inp.kappa_m * li2 / (3.0 * (inp.mu0 + 1.0)) * inp.tau**2
    if inp.unit_mode == "dimensionless":
        return bracket
    return -_p_prefactor(inp.a) * bracket


def entropy_debye(inp: AsymptoticInput) -> float:
    """Leading (linear in T) entropy with Debye permeability."""
    _require_debye(inp)
    li2 = polylog(2, _r0_sq(inp.mu0))
    bracket = 4.0 * inp.kappa_m * li2 / (3.0 * (inp.mu0 + 1.0)) * inp.tau
    if inp.unit_mode == "dimensionless":
        return bracket
    return _s_prefactor(inp.a) * bracket


def free_energy_dc(inp: AsymptoticInput, f_plain: float, q: float) -> float:
    """Free energy with free carriers from the carrier-free value.

    Adds the zero-frequency jump, which replaces Li3 of the squared TM
    static reflection coefficient by its unit-coefficient endpoint zeta(3),
    plus the exponentially small remainder ``q`` of the nonzero
    frequencies.  The jump does not involve the permeability.
    """
    jump = ZETA3 - polylog(3, _r0_sq(inp.eps0))
    if inp.unit_mode == "dimensionless":
        return f_plain - 0.5 * inp.tau * jump + q
    T = temperature_from_tau(inp.a, inp.tau)
    return f_plain - K_BOLTZMANN * T / (16.0 * math.pi * inp.a**2) * jump + q


def entropy_dc_asymptotic(inp: AsymptoticInput, s_plain: float, dq_dt: float) -> float:
    """Entropy with free carriers from the carrier-free value and dQ/dT."""
    jump = ZETA3 - polylog(3, _r0_sq(inp.eps0))
    if inp.unit_mode == "dimensionless":
        return s_plain + jump - dq_dt
    return s_plain + _s_prefactor(inp.a) * jump - dq_dt


def entropy_t2_coefficient(eps0: float, mu0: float) -> float:
    """Coefficient c2 in S = c2 T^2 + O(T^3) for constant response, J/(K^3 m^2)."""
    ratio = (eps0 * mu0 - 1.0) ** 2 / ((eps0 + 1.0) * (mu0 + 1.0))
    return 3.0 * ZETA3 * K_BOLTZMANN**3 * ratio / (2.0 * math.pi * (HBAR * C_LIGHT) ** 2)


def entropy_t3_coefficient(eps0: float, mu0: float, a: float) -> float:
    """Coefficient c3 in S = c2 T^2 + c3 T^3 + ... for constant response, J/(K^4 m^2)."""
    x = _quartic_combination(eps0, mu0)
    return -2.0 * math.pi**2 * K_BOLTZMANN**4 * a * x / (45.0 * (HBAR * C_LIGHT) ** 3)


def entropy_t1_coefficient_debye(mu0: float, omega_m: float, a: float) -> float:
    """Coefficient c1 in S = c1 T + O(T^2) for Debye permeability, J/(K^2 m^2)."""
    li2 = polylog(2, _r0_sq(mu0))
    return K_BOLTZMANN**2 * li2 / (6.0 * HBAR * omega_m * (mu0 + 1.0) * a * a)


def pressure_t4_coefficient(eps0: float, mu0: float, a: float) -> float:
    """Coefficient c4 in Delta P = c4 tau^4 + O(tau^5) for constant response, Pa."""
    return -_p_prefactor(a) * _quartic_combination(eps0, mu0) / 720.0
