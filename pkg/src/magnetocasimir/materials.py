"""Material response along the imaginary frequency axis.

Supported models: constant permittivity and permeability, a Debye
relaxation form for the permeability, and an activated dc-conductivity
correction to the permittivity.  With free carriers the permittivity at
the zero Matsubara frequency diverges; that case is reported through the
:data:`EPS_INFINITE` sentinel so the engine can branch to the exact
unit TM reflection coefficient instead of feeding an IEEE infinity into
arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .units import DimensionlessState, HBAR, K_BOLTZMANN, kappa_from, to_dimensionless

__all__ = [
    "DcConductivity",
    "MaterialModel",
    "VACUUM",
    "EPS_INFINITE",
    "sigma0",
    "beta_dc",
    "eval_eps",
    "eval_mu",
    "validity_ratio",
    "dimensionless_state",
]


class _InfiniteStatic:
    """Sentinel for a divergent zero-frequency permittivity."""

    __slots__ = ()

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return "EPS_INFINITE"


EPS_INFINITE = _InfiniteStatic()


@dataclass(frozen=True)
class DcConductivity:
    """Activated static conductivity sigma0(T) = sigma_ref * exp(-b / T).

    ``sigma_ref`` is in Gaussian units (1/s); ``b`` is the activation
    temperature in K.  The activated form guarantees sigma0 -> 0 faster
    than any power of T as T -> 0.
    """

    sigma_ref: float
    b: float

    def __post_init__(self) -> None:
        if self.sigma_ref < 0.0:
            raise ValueError(f"sigma_ref must be non-negative, got {self.sigma_ref!r}")
        if self.b <= 0.0:
            raise ValueError(f"activation temperature must be positive, got {self.b!r}")


@dataclass(frozen=True)
class MaterialModel:
    """Static response of one plate material.

    ``omega_m`` switches the permeability from the constant ``mu0`` to the
    Debye form mu(i xi) = 1 + (mu0 - 1) / (1 + xi / omega_m).  ``dc`` adds
    the free-carrier term to the permittivity only, never to the
    permeability.
    """

    eps0: float = 1.0
    mu0: float = 1.0
    omega_m: float | None = None
    dc: DcConductivity | None = None

    def __post_init__(self) -> None:
        if self.eps0 < 1.0:
            raise ValueError(f"eps0 must be >= 1, got {self.eps0!r}")
        if self.mu0 < 1.0:
            raise ValueError(f"mu0 must be >= 1, got {self.mu0!r}")
        if self.omega_m is not None and self.omega_m <= 0.0:
            raise ValueError(f"omega_m must be positive, got {self.omega_m!r}")

    @property
    def has_debye_mu(self) -> bool:
        return self.omega_m is not None

    def without_dc(self) -> "MaterialModel":
        """Same response with the free-carrier term removed."""
        return MaterialModel(eps0=self.eps0, mu0=self.mu0, omega_m=self.omega_m)


VACUUM = MaterialModel()


def sigma0(model: MaterialModel, T: float) -> float:
    """Static conductivity sigma0(T) in Gaussian units (1/s); 0 without carriers."""
    if model.dc is None:
        return 0.0
    if T <= 0.0:
        raise ValueError(f"temperature must be positive, got {T!r}")
    return model.dc.sigma_ref * math.exp(-model.dc.b / T)


def beta_dc(model: MaterialModel, T: float) -> float:
    """Dimensionless conductivity strength beta(T) = 2 hbar sigma0(T) / (k_B T)."""
    if model.dc is None:
        raise ValueError("material has no dc-conductivity term")
    return 2.0 * HBAR * sigma0(model, T) / (K_BOLTZMANN * T)


def eval_eps(model: MaterialModel, l: int, T: float):
    """Permittivity at the Matsubara frequency of order ``l``.

    Returns ``eps0`` (plus ``beta(T)/l`` for ``l >= 1`` with carriers).
    With a nonzero conductivity the ``l = 0`` value diverges and the
    :data:`EPS_INFINITE` sentinel is returned instead of a number.
    """
    if l < 0:
        raise ValueError(f"Matsubara order must be non-negative, got {l!r}")
    if model.dc is None:
        return model.eps0
    beta = beta_dc(model, T)
    if beta == 0.0:
        return model.eps0
    if l == 0:
        return EPS_INFINITE
    return model.eps0 + beta / l


def eval_mu(model: MaterialModel, zeta_l, kappa_m: float):
    """Permeability at dimensionless frequency ``zeta_l`` (scalar or array).

    Constant model: ``mu0``.  Debye model: 1 + (mu0 - 1) / (1 + kappa_m * zeta_l)
    with ``kappa_m = c / (2 a omega_m)`` carrying the separation dependence.
    """
    if not model.has_debye_mu:
        if np.ndim(zeta_l) == 0:
            return model.mu0
        return np.full(np.shape(zeta_l), model.mu0)
    out = 1.0 + (model.mu0 - 1.0) / (1.0 + kappa_m * np.asarray(zeta_l, dtype=float))
    if np.ndim(zeta_l) == 0:
        return float(out)
    return out


def validity_ratio(model: MaterialModel, l: int, T: float) -> float:
    """Diagnostic ratio of the carrier term to the bare permittivity, beta/(l eps0).

    Small values justify neglecting free carriers at all nonzero Matsubara
    frequencies.
    """
    if l < 1:
        raise ValueError(f"Matsubara order must be >= 1, got {l!r}")
    if model.dc is None:
        return 0.0
    return beta_dc(model, T) / (l * model.eps0)


def dimensionless_state(model: MaterialModel, a: float, T: float) -> DimensionlessState:
    """Build the engine state for ``model`` at separation ``a`` and temperature ``T``."""
    sig = sigma0(model, T) if (model.dc is not None and T > 0.0) else None
    return to_dimensionless(a, T, omega_m=model.omega_m, sigma=sig)


def kappa_for(model: MaterialModel, a: float) -> float:
    """Dimensionless relaxation scale of the model's permeability at separation ``a``."""
    return kappa_from(a, model.omega_m)
