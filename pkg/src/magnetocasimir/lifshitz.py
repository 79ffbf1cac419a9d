"""Matsubara-sum engine for the parallel-plate fluctuation interaction.

Free energy per unit area at temperature T:

    F = (hbar c tau / 32 pi^2 a^3) * sum'_{l>=0} I_l,
    I_l = int_{zeta_l}^inf y [ln(1 - r_tm^2 e^-y) + ln(1 - r_te^2 e^-y)] dy,

with the l = 0 term halved (the prime).  The pressure uses the same sum
with the kernel y^2 [r^2 e^-y / (1 - r^2 e^-y)] per polarization and a
1/a^4 prefactor.  At T = 0 the sum becomes an integral over continuous
zeta, evaluated here by nested quadrature.

Numerical scheme
----------------
Each y integral runs over composite Gauss-Legendre panels of fixed width
from zeta_l to zeta_l + y_cutoff_offset; the integrand decays like e^-y,
and the remainder beyond the cutoff is bounded analytically and folded
into the reported error estimate.  The first panel is subdivided
geometrically toward its left edge: the reflection coefficients vary on
the scale of zeta_l there, and for a diverging zero-frequency
permittivity the integrand behaves like y ln y at the origin.  Without
the grading a fixed-order panel cannot resolve either feature.

The Matsubara sum is accumulated in ascending l with a compensated
(error-free transformation) accumulator, so results are reproducible and
independent of how terms might be batched.  Truncation stops after a run
of consecutive terms falls below a relative tolerance, with a hard cap
as a safeguard.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .materials import (
    EPS_INFINITE,
    MaterialModel,
    beta_dc,
    eval_eps,
    eval_mu,
    kappa_for,
    sigma0,
)
from .polylog import ZETA3, polylog
from .units import C_LIGHT, DimensionlessState, HBAR, K_BOLTZMANN

__all__ = [
    "EngineSettings",
    "ConvergenceReport",
    "SmallTauWarning",
    "CompensatedSum",
    "reflection_tm",
    "reflection_te",
    "free_energy",
    "pressure",
    "zero_point_energy",
    "zero_temperature_pressure",
    "free_energy_l0",
    "zero_frequency_term",
    "thermal_correction",
    "q_difference",
]

_GL_POINTS = 24
_MAX_GRADE_LEVELS = 44
_CHUNK = 256
_SMALL_TAU = 1e-3
_L_CAP_SCALE = 60.0
_L_CAP_MAX = 10**7


class SmallTauWarning(UserWarning):
    """Emitted when tau is small enough that the closed-form expansions
    are both faster and more accurate than the direct sum."""


@dataclass(frozen=True)
class EngineSettings:
    """Quadrature and truncation policy of the Matsubara engine.

    ``l_max_cap = None`` resolves at run time to ceil(60 / tau), capped at
    10^7; by then the terms have decayed to ~1e-26 of the total, far below
    the truncation tolerance.
    """

    quad_rel_tol: float = 1e-10
    panel_width: float = 8.0
    y_cutoff_offset: float = 80.0
    matsubara_rel_tol: float = 1e-12
    matsubara_consecutive: int = 3
    l_max_cap: int | None = None

    def __post_init__(self) -> None:
        if self.quad_rel_tol <= 0.0 or self.matsubara_rel_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.panel_width <= 0.0 or self.y_cutoff_offset <= self.panel_width:
            raise ValueError("need 0 < panel_width < y_cutoff_offset")
        if self.matsubara_consecutive < 1:
            raise ValueError("matsubara_consecutive must be >= 1")
        if self.l_max_cap is not None and self.l_max_cap < 1:
            raise ValueError("l_max_cap must be >= 1")


DEFAULT_SETTINGS = EngineSettings()


@dataclass(frozen=True)
class ConvergenceReport:
    """Diagnostics of one Matsubara summation.

    ``truncation_estimate`` bounds the discarded tail of the sum (same
    units as the returned value); ``quad_error_estimate`` collects the
    analytic cutoff bounds of the y integrals.  ``hit_cap`` flags that the
    cap stopped the sum before the truncation criterion was met.
    """

    l_used: int
    truncation_estimate: float
    quad_error_estimate: float
    hit_cap: bool


class CompensatedSum:
    """Neumaier compensated accumulator (error-free transformation)."""

    __slots__ = ("_s", "_c")

    def __init__(self) -> None:
        self._s = 0.0
        self._c = 0.0

    def add(self, x: float) -> None:
        s = self._s + x
        if abs(self._s) >= abs(x):
            self._c += (self._s - s) + x
        else:
            self._c += (x - s) + self._s
        self._s = s

    @property
    def value(self) -> float:
        return self._s + self._c


# ---------------------------------------------------------------------------
# Reflection coefficients.


def reflection_tm(eps, mu, zeta, y):
    """TM reflection coefficient at imaginary frequency (scalars or arrays).

    (eps y - s) / (eps y + s) with s = sqrt(y^2 + zeta^2 (eps mu - 1)).
    At zeta = 0 this reduces to the static value (eps - 1)/(eps + 1) for
    every y.  The magnitude is below 1 for eps, mu >= 1; the sign can be
    negative when mu exceeds eps.
    """
    s = np.sqrt(y * y + zeta * zeta * (eps * mu - 1.0))
    return (eps * y - s) / (eps * y + s)


def reflection_te(eps, mu, zeta, y):
    """TE reflection coefficient; the roles of eps and mu in the prefactor swap."""
    s = np.sqrt(y * y + zeta * zeta * (eps * mu - 1.0))
    return (mu * y - s) / (mu * y + s)


# ---------------------------------------------------------------------------
# Quadrature grids.  All Matsubara terms with the same grade level share one
# relative grid (node offsets from the lower integration limit), so whole
# runs of terms can be evaluated as a single 2-D kernel call.

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}
_REL_GRID_CACHE: dict[tuple[float, float, int, int], tuple[np.ndarray, np.ndarray, float]] = {}


def _gl_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    rule = _GL_CACHE.get(n)
    if rule is None:
        rule = np.polynomial.legendre.leggauss(n)
        _GL_CACHE[n] = rule
    return rule


def _grid_from_edges(edges: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    x, w = _gl_rule(_GL_POINTS)
    half = 0.5 * np.diff(edges)
    mid = edges[:-1] + half
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _grade_levels(zeta: float, width: float) -> int:
    # Subdivide the first panel until its innermost piece resolves the
    # zeta-scale boundary layer (floor 2^-44 of the width for zeta ~ 0).
    if zeta >= width:
        return 0
    floor = width * 2.0 ** (-_MAX_GRADE_LEVELS)
    target = max(zeta / 4.0, floor)
    levels = int(math.ceil(math.log2(width / target)))
    return min(max(levels, 1), _MAX_GRADE_LEVELS)


def _edges(lo: float, width: float, n_regular: int, levels: int) -> np.ndarray:
    parts = [np.array([lo])]
    if levels > 0:
        parts.append(lo + width * 2.0 ** (-np.arange(levels, 0, -1, dtype=float)))
    parts.append(lo + width * np.arange(1, n_regular + 1, dtype=float))
    return np.concatenate(parts)


def _n_regular(settings: EngineSettings) -> int:
    return int(math.ceil(settings.y_cutoff_offset / settings.panel_width))


def _rel_grid(settings: EngineSettings, levels: int) -> tuple[np.ndarray, np.ndarray, float]:
    # Composite rule on [0, cutoff] with the requested grading of the first
    # panel; shift by zeta_l to obtain the actual integration grid.
    key = (settings.panel_width, settings.y_cutoff_offset, levels, _GL_POINTS)
    grid = _REL_GRID_CACHE.get(key)
    if grid is None:
        edges = _edges(0.0, settings.panel_width, _n_regular(settings), levels)
        nodes, weights = _grid_from_edges(edges)
        grid = (nodes, weights, float(edges[-1]))
        _REL_GRID_CACHE[key] = grid
    return grid


def _graded_grid(zeta: float, settings: EngineSettings) -> tuple[np.ndarray, np.ndarray, float]:
    levels = _grade_levels(zeta, settings.panel_width)
    nodes, weights, hi = _rel_grid(settings, levels)
    return zeta + nodes, weights, zeta + hi


# ---------------------------------------------------------------------------
# Kernels.  eps/mu/zeta may be scalars or column vectors broadcast against y.


def _fe_kernel(eps, mu, zeta, y, tm_unit: bool = False):
    s = np.sqrt(y * y + zeta * zeta * (eps * mu - 1.0))
    ey = np.exp(-y)
    em1 = -np.expm1(-y)  # 1 - e^-y without cancellation

    def _log_piece(alpha):
        num = alpha * y
        r = (num - s) / (num + s)
        r2 = r * r
        one_m_r2 = 4.0 * num * s / ((num + s) * (num + s))
        x = r2 * ey
        with np.errstate(divide="ignore"):
            return np.where(x > 0.5, np.log(em1 + ey * one_m_r2), np.log1p(-x))

    tm = np.log(em1) if tm_unit else _log_piece(eps)
    return y * (tm + _log_piece(mu))


def _pressure_kernel(eps, mu, zeta, y, tm_unit: bool = False):
    s = np.sqrt(y * y + zeta * zeta * (eps * mu - 1.0))
    ey = np.exp(-y)
    em1 = -np.expm1(-y)

    def _ratio_piece(alpha):
        num = alpha * y
        r = (num - s) / (num + s)
        r2 = r * r
        one_m_r2 = 4.0 * num * s / ((num + s) * (num + s))
        return r2 * ey / (em1 + ey * one_m_r2)

    tm = ey / em1 if tm_unit else _ratio_piece(eps)
    return y * y * (tm + _ratio_piece(mu))


def _fe_diff_kernel(eps, deps, mu, zeta, y):
    # Kernel difference between permittivities eps + deps and eps, written
    # without subtracting nearly equal quadratures so that exponentially
    # small differences survive in floating point.
    zz = zeta * zeta
    s2 = y * y + zz * (eps * mu - 1.0)
    s = np.sqrt(s2)
    st = np.sqrt(s2 + zz * deps * mu)
    ey = np.exp(-y)
    em1 = -np.expm1(-y)
    epst = eps + deps

    # TM: r - r~ = 2 y deps [eps^2 zz mu - (eps + eps~) s^2] / (...)
    num = eps * y
    numt = epst * y
    rtm = (num - s) / (num + s)
    rtmt = (numt - st) / (numt + st)
    d_rtm = (
        2.0 * y * deps * (eps * eps * zz * mu - (eps + epst) * s2)
        / ((eps * st + epst * s) * (num + s) * (numt + st))
    )
    d_rtm2 = d_rtm * (rtm + rtmt)  # rtm^2 - rtmt^2
    one_m_rtm2 = 4.0 * num * s / ((num + s) * (num + s))
    tm = np.log1p(ey * d_rtm2 / (em1 + ey * one_m_rtm2))

    # TE: r - r~ = 2 mu y (st - s) / (...) with st - s = zz deps mu / (st + s)
    numm = mu * y
    rte = (numm - s) / (numm + s)
    rtet = (numm - st) / (numm + st)
    d_st = zz * deps * mu / (st + s)
    d_rte = 2.0 * numm * d_st / ((numm + s) * (numm + st))
    d_rte2 = d_rte * (rte + rtet)
    one_m_rte2 = 4.0 * numm * s / ((numm + s) * (numm + s))
    te = np.log1p(ey * d_rte2 / (em1 + ey * one_m_rte2))

    return y * (tm + te)


def _fe_tail_bound(Y: float) -> float:
    # | int_Y^inf y ln(1 - r^2 e^-y) dy | <= r^2 (Y+1) e^-Y / (1 - r^2 e^-Y),
    # summed over both polarizations with the worst case r^2 = 1.
    e = math.exp(-Y)
    return 2.0 * (Y + 1.0) * e / (1.0 - e)


def _pressure_tail_bound(Y: float) -> float:
    e = math.exp(-Y)
    return 2.0 * (Y * Y + 2.0 * Y + 2.0) * e / (1.0 - e)


# ---------------------------------------------------------------------------
# Matsubara summation.


def _resolve_cap(tau: float, settings: EngineSettings) -> int:
    if settings.l_max_cap is not None:
        return settings.l_max_cap
    return max(1, min(int(math.ceil(_L_CAP_SCALE / tau)), _L_CAP_MAX))


def _material_arrays(model: MaterialModel, state: DimensionlessState, beta: float, ls: np.ndarray):
    zeta = ls * state.tau
    eps = model.eps0 + beta / ls if beta != 0.0 else np.full(ls.shape, model.eps0)
    mu = eval_mu(model, zeta, state.kappa_m)
    if np.ndim(mu) == 0:
        mu = np.full(ls.shape, mu)
    return eps, mu, zeta


def _sum_positive_frequencies(state, settings, batch_fn, start_value, start_quad_err):
    """Ascending sum over l >= 1 with compensated accumulation.

    ``batch_fn(ls, levels)`` returns (terms, tail_bounds) for an ascending
    index array whose members share one grade level.  ``start_value``
    seeds the accumulator (the halved l = 0 term).
    """
    tau = state.tau
    width = settings.panel_width
    cap = _resolve_cap(tau, settings)
    acc = CompensatedSum()
    acc.add(start_value)
    quad_err = start_quad_err
    consecutive = 0
    l_used = 0
    last_term = 0.0
    prev_term = 0.0
    done = False

    l = 1
    while l <= cap and not done:
        levels = _grade_levels(l * tau, width)
        hi = min(l + _CHUNK - 1, cap)
        if levels > 0:
            h = l
            while h < hi and _grade_levels((h + 1) * tau, width) == levels:
                h += 1
            hi = h
        ls = np.arange(l, hi + 1)
        terms, bounds = batch_fn(ls, levels)
        for i in range(len(ls)):
            t = float(terms[i])
            acc.add(t)
            quad_err += float(bounds[i])
            prev_term = last_term
            last_term = t
            l_used = int(ls[i])
            if abs(t) <= settings.matsubara_rel_tol * abs(acc.value):
                consecutive += 1
                if consecutive >= settings.matsubara_consecutive:
                    done = True
                    break
            else:
                consecutive = 0
        l = l_used + 1

    # Term magnitudes decay like a polynomial in zeta_l times e^-zeta_l, so
    # successive ratios decrease toward e^-tau; the last observed ratio
    # therefore bounds all later ones and gives a geometric tail bound.
    q = math.exp(-tau)
    if prev_term != 0.0 and abs(last_term) < abs(prev_term):
        q = max(q, abs(last_term) / abs(prev_term))
    truncation = abs(last_term) * q / (1.0 - q) if l_used > 0 else 0.0
    return acc.value, ConvergenceReport(l_used, truncation, quad_err, not done)


def _term_on_grid(kernel, eps, mu, zeta, grid, **kw) -> float:
    nodes, weights, _ = grid
    vals = kernel(eps, mu, zeta, nodes, **kw)
    return math.fsum(weights * vals)


def _matsubara_sum(model, state, settings, kernel, tail_bound):
    tau = state.tau
    if not (tau > 0.0):
        raise ValueError("the Matsubara sum requires T > 0")
    if tau < _SMALL_TAU:
        warnings.warn(
            f"tau = {tau:.3g} < {_SMALL_TAU}: the low-temperature closed forms "
            "are better conditioned here; computing the direct sum anyway",
            SmallTauWarning,
            stacklevel=3,
        )

    beta = beta_dc(model, state.T) if model.dc is not None else 0.0

    # l = 0 enters with half weight; with free carriers the TM coefficient
    # is exactly 1 there (the permittivity diverges).
    eps_l0 = eval_eps(model, 0, state.T)
    tm_unit = eps_l0 is EPS_INFINITE
    grid0 = _graded_grid(0.0, settings)
    v0 = _term_on_grid(kernel, 1.0 if tm_unit else eps_l0, model.mu0, 0.0, grid0, tm_unit=tm_unit)
    start = 0.5 * v0
    start_err = 0.5 * tail_bound(grid0[2])

    def batch(ls: np.ndarray, levels: int):
        eps, mu, zeta = _material_arrays(model, state, beta, ls)
        nodes, weights, hi = _rel_grid(settings, levels)
        y = zeta[:, None] + nodes[None, :]
        vals = kernel(eps[:, None], mu[:, None], zeta[:, None], y)
        terms = np.sum(vals * weights[None, :], axis=1)
        bounds = np.array([tail_bound(z + hi) for z in zeta])
        return terms, bounds

    return _sum_positive_frequencies(state, settings, batch, start, start_err)


# ---------------------------------------------------------------------------
# Public operations.


def free_energy(
    model: MaterialModel,
    state: DimensionlessState,
    settings: EngineSettings = DEFAULT_SETTINGS,
) -> tuple[float, ConvergenceReport]:
    """Fluctuation free energy per unit area in J/m^2 (non-positive).

    Returns the value together with a :class:`ConvergenceReport` whose
    error fields are scaled to J/m^2.
    """
    total, report = _matsubara_sum(model, state, settings, _fe_kernel, _fe_tail_bound)
    pref = HBAR * C_LIGHT * state.tau / (32.0 * math.pi**2 * state.a**3)
    return pref * total, ConvergenceReport(
        report.l_used,
        pref * report.truncation_estimate,
        pref * report.quad_error_estimate,
        report.hit_cap,
    )


def pressure(
    model: MaterialModel,
    state: DimensionlessState,
    settings: EngineSettings = DEFAULT_SETTINGS,
) -> tuple[float, ConvergenceReport]:
    """Fluctuation pressure in Pa (non-positive, attraction).

    This is the Matsubara-sum analogue of the T = 0 pressure quadrature;
    its consistency with -dF/da is enforced by the test suite rather than
    assumed.
    """
    total, report = _matsubara_sum(model, state, settings, _pressure_kernel, _pressure_tail_bound)
    pref = HBAR * C_LIGHT * state.tau / (32.0 * math.pi**2 * state.a**4)
    return -pref * total, ConvergenceReport(
        report.l_used,
        pref * report.truncation_estimate,
        pref * report.quad_error_estimate,
        report.hit_cap,
    )


def zero_frequency_term(
    model: MaterialModel,
    state: DimensionlessState,
    settings: EngineSettings = DEFAULT_SETTINGS,
) -> float:
    """The (halved) l = 0 contribution to the free energy, by quadrature, J/m^2."""
    eps_l0 = eval_eps(model, 0, state.T)
    tm_unit = eps_l0 is EPS_INFINITE
    grid0 = _graded_grid(0.0, settings)
    v0 = _term_on_grid(
        _fe_kernel, 1.0 if tm_unit else eps_l0, model.mu0, 0.0, grid0, tm_unit=tm_unit
    )
    pref = HBAR * C_LIGHT * state.tau / (32.0 * math.pi**2 * state.a**3)
    return 0.5 * pref * v0


def free_energy_l0(model: MaterialModel, state: DimensionlessState) -> float:
    """Closed form of the zero-frequency free-energy term, J/m^2.

    -(k_B T / 16 pi a^2) [Li3(r_tm0^2) + Li3(r_te0^2)] with the static
    reflection coefficients; with free carriers the TM polylogarithm sits
    at its unit-argument endpoint zeta(3).
    """
    if not (state.T > 0.0):
        raise ValueError("the zero-frequency term requires T > 0")
    r01 = (model.eps0 - 1.0) / (model.eps0 + 1.0)
    r02 = (model.mu0 - 1.0) / (model.mu0 + 1.0)
    dc_active = model.dc is not None and sigma0(model, state.T) > 0.0
    tm = ZETA3 if dc_active else polylog(3, r01 * r01)
    te = polylog(3, r02 * r02)
    return -K_BOLTZMANN * state.T / (16.0 * math.pi * state.a**2) * (tm + te)


def _zero_temperature_value(model, a, settings, kernel, tail_bound) -> float:
    if model.dc is not None:
        raise ValueError(
            "the T = 0 quadrature is defined for finite static response only; "
            "remove the dc-conductivity term"
        )
    kappa = kappa_for(model, a)
    outer_edges = _edges(0.0, settings.panel_width, _n_regular(settings), _MAX_GRADE_LEVELS)
    z_nodes, z_weights = _grid_from_edges(outer_edges)
    inner = []
    for z in z_nodes:
        mu_z = eval_mu(model, float(z), kappa)
        grid = _graded_grid(float(z), settings)
        inner.append(_term_on_grid(kernel, model.eps0, mu_z, float(z), grid))
    return math.fsum(z_weights * np.asarray(inner))


def zero_point_energy(
    model: MaterialModel,
    a: float,
    settings: EngineSettings = DEFAULT_SETTINGS,
) -> float:
    """Interaction energy per unit area at T = 0, J/m^2 (non-positive)."""
    value = _zero_temperature_value(model, a, settings, _fe_kernel, _fe_tail_bound)
    return HBAR * C_LIGHT / (32.0 * math.pi**2 * a**3) * value


def zero_temperature_pressure(
    model: MaterialModel,
    a: float,
    settings: EngineSettings = DEFAULT_SETTINGS,
) -> float:
    """Pressure at T = 0, Pa (non-positive)."""
    value = _zero_temperature_value(model, a, settings, _pressure_kernel, _pressure_tail_bound)
    return -HBAR * C_LIGHT / (32.0 * math.pi**2 * a**4) * value


def thermal_correction(
    model: MaterialModel,
    state: DimensionlessState,
    settings: EngineSettings = DEFAULT_SETTINGS,
) -> float:
    """Thermal part of the free energy, F(T) - E(a), J/m^2.

    Computed by subtraction of the T = 0 quadrature; both pieces share
    the same kernels and panel scheme, so their systematic quadrature
    errors largely cancel.
    """
    f, _ = free_energy(model, state, settings)
    return f - zero_point_energy(model, state.a, settings)


def q_difference(
    model_dc: MaterialModel,
    model_plain: MaterialModel,
    state: DimensionlessState,
    settings: EngineSettings = DEFAULT_SETTINGS,
) -> float:
    """Free-energy difference of the l >= 1 terms with and without carriers, J/m^2.

    This remainder decays like the activated conductivity itself,
    exp(-b/T), so it is computed from an exact kernel difference rather
    than by subtracting two full sums, which would drown it in roundoff.
    """
    if model_dc.dc is None or model_plain.dc is not None:
        raise ValueError("expected (model with dc term, model without dc term)")
    if model_dc.without_dc() != model_plain:
        raise ValueError("models must be identical apart from the dc term")
    beta = beta_dc(model_dc, state.T)
    if beta == 0.0:
        return 0.0

    def batch(ls: np.ndarray, levels: int):
        zeta = ls * state.tau
        deps = beta / ls
        mu = eval_mu(model_plain, zeta, state.kappa_m)
        if np.ndim(mu) == 0:
            mu = np.full(ls.shape, mu)
        nodes, weights, _ = _rel_grid(settings, levels)
        y = zeta[:, None] + nodes[None, :]
        vals = _fe_diff_kernel(model_plain.eps0, deps[:, None], mu[:, None], zeta[:, None], y)
        terms = np.sum(vals * weights[None, :], axis=1)
        return terms, np.zeros(len(ls))

    total, _ = _sum_positive_frequencies(state, settings, batch, 0.0, 0.0)
    pref = HBAR * C_LIGHT * state.tau / (32.0 * math.pi**2 * state.a**3)
    return pref * total
