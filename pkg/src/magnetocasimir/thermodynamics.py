"""Entropy and thermodynamic-consistency checks by numerical differentiation.

The entropy is S = -dF/dT of the full Matsubara free energy (the T = 0
part is temperature independent, so this equals minus the derivative of
the thermal correction alone).  Central differences with Richardson
extrapolation keep the truncation error at O(h^4) and provide an error
estimate from the extrapolation table.  Steps scale with the evaluation
point so that sweeps down to millikelvin temperatures stay conditioned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .lifshitz import (
    ConvergenceReport,
    DEFAULT_SETTINGS,
    EngineSettings,
    free_energy,
    pressure,
    q_difference,
)
from .materials import MaterialModel, beta_dc, dimensionless_state
from .polylog import ZETA3, polylog
from .units import K_BOLTZMANN

__all__ = [
    "DiffSettings",
    "StepUnderflowError",
    "EntropyResult",
    "EntropyDecomposition",
    "entropy",
    "pressure_consistency",
    "nernst_limit_dc",
    "entropy_dc_decomposition",
    "limit_at_zero_temperature",
    "richardson_derivative",
]


class StepUnderflowError(ValueError):
    """Requested differentiation steps collapsed below the configured floor."""


@dataclass(frozen=True)
class DiffSettings:
    """Finite-difference policy for the temperature and separation derivatives."""

    rel_step: float = 1e-3
    richardson_levels: int = 2
    min_abs_step: float = 1e-6

    def __post_init__(self) -> None:
        if self.rel_step <= 0.0:
            raise ValueError("rel_step must be positive")
        if self.richardson_levels < 1:
            raise ValueError("richardson_levels must be >= 1")
        if self.min_abs_step <= 0.0:
            raise ValueError("min_abs_step must be positive")


DEFAULT_DIFF = DiffSettings()


@dataclass(frozen=True)
class EntropyResult:
    """Entropy per unit area with differentiation and summation diagnostics."""

    value: float
    error_estimate: float
    l_used: int
    hit_cap: bool


@dataclass(frozen=True)
class EntropyDecomposition:
    """The three contributions to the entropy of a conducting material.

    ``total`` is s_plain + jump_term - dq_dt when the carriers are active,
    and just s_plain in the degenerate zero-conductivity case (no carriers
    means no zero-frequency jump).
    """

    s_plain: float
    jump_term: float
    dq_dt: float
    total: float


def richardson_derivative(
    f: Callable[[float], float],
    x: float,
    h0: float,
    levels: int,
) -> tuple[float, float]:
    """First derivative by central differences with Richardson extrapolation.

    Returns (derivative, error estimate).  The estimate is the magnitude
    of the last extrapolation correction; with a single level it falls
    back to the O(h^2) truncation heuristic.
    """
    if h0 <= 0.0:
        raise ValueError("step must be positive")
    diffs = []
    h = h0
    for _ in range(levels):
        diffs.append((f(x + h) - f(x - h)) / (2.0 * h))
        h *= 0.5
    row = list(diffs)
    err = abs(row[0]) * (h0 / max(abs(x), h0)) ** 2
    for k in range(1, levels):
        factor = 4.0**k
        prev = row[k - 1]
        for j in range(levels - 1, k - 1, -1):
            row[j] = (factor * row[j] - row[j - 1]) / (factor - 1.0)
        err = abs(row[levels - 1] - prev)
    return row[levels - 1], err


def _temperature_steps(T: float, diff: DiffSettings) -> float:
    h0 = diff.rel_step * T
    finest = h0 * 0.5 ** (diff.richardson_levels - 1)
    if finest < diff.min_abs_step:
        raise StepUnderflowError(
            f"temperature step {finest:.3g} K fell below the floor "
            f"{diff.min_abs_step:.3g} K at T = {T:.6g} K"
        )
    if T - h0 <= 0.0:
        raise ValueError("widest differentiation step must keep T - h > 0")
    return h0


def entropy(
    model: MaterialModel,
    a: float,
    T: float,
    settings: EngineSettings = DEFAULT_SETTINGS,
    diff: DiffSettings = DEFAULT_DIFF,
) -> EntropyResult:
    """Entropy per unit area S = -dF/dT in J/(K m^2)."""
    if T <= 0.0:
        raise ValueError(f"temperature must be positive, got {T!r}")
    h0 = _temperature_steps(T, diff)
    reports: list[ConvergenceReport] = []

    def f(Tx: float) -> float:
        state = dimensionless_state(model, a, Tx)
        value, report = free_energy(model, state, settings)
        reports.append(report)
        return value

    deriv, err = richardson_derivative(f, T, h0, diff.richardson_levels)
    return EntropyResult(
        value=-deriv,
        error_estimate=err,
        l_used=max(r.l_used for r in reports),
        hit_cap=any(r.hit_cap for r in reports),
    )


def pressure_consistency(
    model: MaterialModel,
    a: float,
    T: float,
    settings: EngineSettings = DEFAULT_SETTINGS,
    diff: DiffSettings = DEFAULT_DIFF,
) -> float:
    """Dimensionless residual |P + dF/da| / |P| of the pressure-energy relation.

    Returns 0 for a vanishing pressure (vacuum), where the relation is
    trivially satisfied.
    """
    state = dimensionless_state(model, a, T)
    p, _ = pressure(model, state, settings)
    if p == 0.0:
        return 0.0

    def f(ax: float) -> float:
        value, _ = free_energy(model, dimensionless_state(model, ax, T), settings)
        return value

    dfda, _ = richardson_derivative(f, a, diff.rel_step * a, diff.richardson_levels)
    return abs(p + dfda) / abs(p)


def nernst_limit_dc(a: float, eps0: float) -> float:
    """The T -> 0 entropy of a plate pair with (activated) dc conductivity.

    (k_B / 16 pi a^2) [zeta(3) - Li3(r0^2)] with r0 = (eps0-1)/(eps0+1):
    strictly positive for finite eps0 and independent of the permeability.
    A nonzero value here is what breaks the Nernst heat theorem.
    """
    if a <= 0.0:
        raise ValueError(f"separation must be positive, got {a!r}")
    if eps0 < 1.0:
        raise ValueError(f"eps0 must be >= 1, got {eps0!r}")
    r0 = (eps0 - 1.0) / (eps0 + 1.0)
    return K_BOLTZMANN / (16.0 * math.pi * a * a) * (ZETA3 - polylog(3, r0 * r0))


def entropy_dc_decomposition(
    model_dc: MaterialModel,
    model_plain: MaterialModel,
    a: float,
    T: float,
    settings: EngineSettings = DEFAULT_SETTINGS,
    diff: DiffSettings = DEFAULT_DIFF,
) -> EntropyDecomposition:
    """Split the conducting-material entropy into its three contributions.

    The pieces are the carrier-free entropy, the temperature-independent
    zero-frequency jump (equal to :func:`nernst_limit_dc`), and the
    derivative of the exponentially small nonzero-frequency remainder Q.
    Their sum reproduces ``entropy(model_dc, ...)`` within the combined
    differentiation tolerances.
    """
    if model_dc.dc is None or model_plain.dc is not None:
        raise ValueError("expected (model with dc term, model without dc term)")
    if model_dc.without_dc() != model_plain:
        raise ValueError("models must be identical apart from the dc term")

    s_plain = entropy(model_plain, a, T, settings, diff).value
    jump = nernst_limit_dc(a, model_dc.eps0)

    def q_of_T(Tx: float) -> float:
        state = dimensionless_state(model_dc, a, Tx)
        return q_difference(model_dc, model_plain, state, settings)

    h0 = _temperature_steps(T, diff)
    dq_dt, _ = richardson_derivative(q_of_T, T, h0, diff.richardson_levels)

    if beta_dc(model_dc, T) > 0.0:
        total = s_plain + jump - dq_dt
    else:
        total = s_plain
    return EntropyDecomposition(s_plain=s_plain, jump_term=jump, dq_dt=dq_dt, total=total)


def limit_at_zero_temperature(
    temperatures: Sequence[float],
    values: Sequence[float],
    leading_power: int = 2,
) -> tuple[float, float]:
    """Extrapolate samples on a geometric temperature grid to T = 0.

    Assumes values(T) = limit + c T^p + c' T^(p+1) + ... with
    p = ``leading_power`` and eliminates one power per grid level.
    Returns (limit, error estimate from the last elimination).
    """
    if len(temperatures) != len(values) or len(temperatures) < 2:
        raise ValueError("need at least two (T, value) samples")
    pairs = sorted(zip(temperatures, values), key=lambda p: -p[0])
    ts = [p[0] for p in pairs]
    vs = [p[1] for p in pairs]
    ratios = [ts[i] / ts[i + 1] for i in range(len(ts) - 1)]
    r = ratios[0]
    if r <= 1.0 or any(abs(q / r - 1.0) > 1e-9 for q in ratios):
        raise ValueError("temperatures must form a geometric grid")
    prev = vs[0]
    for k in range(len(vs) - 1):
        rq = r ** (leading_power + k)
        prev = vs[0]
        vs = [(rq * vs[j + 1] - vs[j]) / (rq - 1.0) for j in range(len(vs) - 1)]
    return vs[0], abs(vs[0] - prev)
