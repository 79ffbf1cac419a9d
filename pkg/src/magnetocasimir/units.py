"""Physical constants and conversions between SI inputs and dimensionless plate variables.

All quantities enter the engine through the dimensionless temperature
``tau = 4 pi k_B a T / (hbar c)`` and the dimensionless Matsubara
frequencies ``zeta_l = l * tau``.  Conductivities are kept internally in
Gaussian units (a rate, 1/s); SI values (S/m) are accepted only at the
configuration boundary and converted here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# SI defining constants (exact since the 2019 redefinition).
PLANCK_H = 6.62607015e-34       # J s
HBAR = PLANCK_H / (2.0 * math.pi)
C_LIGHT = 299792458.0           # m / s
K_BOLTZMANN = 1.380649e-23      # J / K

# Vacuum permittivity (CODATA 2018, measured); used only for the
# SI <-> Gaussian conductivity conversion.
EPSILON0_SI = 8.8541878128e-12  # F / m

__all__ = [
    "PLANCK_H",
    "HBAR",
    "C_LIGHT",
    "K_BOLTZMANN",
    "EPSILON0_SI",
    "DimensionlessState",
    "tau_from",
    "temperature_from_tau",
    "kappa_from",
    "to_dimensionless",
    "si_conductivity_to_gaussian",
    "gaussian_conductivity_to_si",
]


@dataclass(frozen=True)
class DimensionlessState:
    """Separation/temperature pair together with the derived engine variables.

    Attributes
    ----------
    a : float
        Plate separation in m.
    T : float
        Temperature in K.
    tau : float
        Dimensionless temperature 4 pi k_B a T / (hbar c).
    kappa_m : float
        Dimensionless magnetic relaxation scale c / (2 a omega_m);
        zero for a frequency-independent permeability.
    beta : float
        Dimensionless dc-conductivity strength 2 hbar sigma0(T) / (k_B T);
        zero when there are no free carriers.
    """

    a: float
    T: float
    tau: float
    kappa_m: float = 0.0
    beta: float = 0.0

    def zeta(self, l: int) -> float:
        """Dimensionless Matsubara frequency of order ``l``."""
        return l * self.tau


def tau_from(a: float, T: float) -> float:
    """Dimensionless temperature 4 pi k_B a T / (hbar c)."""
    if a <= 0.0:
        raise ValueError(f"separation must be positive, got a={a!r}")
    if T < 0.0:
        raise ValueError(f"temperature must be non-negative, got T={T!r}")
    return 4.0 * math.pi * K_BOLTZMANN * a * T / (HBAR * C_LIGHT)


def temperature_from_tau(a: float, tau: float) -> float:
    """Inverse of :func:`tau_from` at fixed separation."""
    if a <= 0.0:
        raise ValueError(f"separation must be positive, got a={a!r}")
    return tau * HBAR * C_LIGHT / (4.0 * math.pi * K_BOLTZMANN * a)


def kappa_from(a: float, omega_m: float | None) -> float:
    """Dimensionless relaxation scale c / (2 a omega_m); 0 for constant permeability."""
    if omega_m is None:
        return 0.0
    if omega_m <= 0.0:
        raise ValueError(f"relaxation frequency must be positive, got {omega_m!r}")
    return C_LIGHT / (2.0 * a * omega_m)


def to_dimensionless(
    a: float,
    T: float,
    omega_m: float | None = None,
    sigma: float | None = None,
) -> DimensionlessState:
    """Map SI inputs onto a :class:`DimensionlessState`.

    Parameters
    ----------
    a, T : float
        Separation (m) and temperature (K).
    omega_m : float, optional
        Characteristic magnetic relaxation frequency in rad/s.
    sigma : float, optional
        Static conductivity at temperature ``T`` in Gaussian units (1/s).
    """
    tau = tau_from(a, T)
    kappa = kappa_from(a, omega_m)
    if sigma is None:
        beta = 0.0
    else:
        if sigma < 0.0:
            raise ValueError(f"conductivity must be non-negative, got {sigma!r}")
        if T <= 0.0:
            raise ValueError("beta requires a positive temperature")
        beta = 2.0 * HBAR * sigma / (K_BOLTZMANN * T)
    return DimensionlessState(a=a, T=T, tau=tau, kappa_m=kappa, beta=beta)


def si_conductivity_to_gaussian(sigma_si: float) -> float:
    """Convert a conductivity from S/m to the Gaussian rate (1/s).

    The Gaussian value is what multiplies 4 pi / xi in the permittivity
    along the imaginary frequency axis.
    """
    if sigma_si < 0.0:
        raise ValueError(f"conductivity must be non-negative, got {sigma_si!r}")
    return sigma_si / (4.0 * math.pi * EPSILON0_SI)


def gaussian_conductivity_to_si(sigma_gauss: float) -> float:
    """Inverse of :func:`si_conductivity_to_gaussian`."""
    if sigma_gauss < 0.0:
        raise ValueError(f"conductivity must be non-negative, got {sigma_gauss!r}")
    return sigma_gauss * 4.0 * math.pi * EPSILON0_SI
