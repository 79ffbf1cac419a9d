"""Constants and SI <-> dimensionless conversions."""

import math

import pytest

from magnetocasimir.units import (
    C_LIGHT,
    EPSILON0_SI,
    HBAR,
    K_BOLTZMANN,
    PLANCK_H,
    DimensionlessState,
    gaussian_conductivity_to_si,
    kappa_from,
    si_conductivity_to_gaussian,
    tau_from,
    temperature_from_tau,
    to_dimensionless,
)


def test_si_defining_constants_exact():
    assert PLANCK_H == 6.62607015e-34
    assert C_LIGHT == 299792458.0
    assert K_BOLTZMANN == 1.380649e-23
    assert HBAR == PLANCK_H / (2.0 * math.pi)


def test_tau_spot_value_independent_arithmetic():
    # tau = 8 pi^2 k_B a T / (h c), written without the package's hbar.
    expected = 8.0 * math.pi**2 * 1.380649e-23 * 1e-6 * 300.0 / (6.62607015e-34 * 299792458.0)
    assert tau_from(1e-6, 300.0) == pytest.approx(expected, rel=1e-15)


def test_tau_zero_temperature():
    assert tau_from(1e-6, 0.0) == 0.0


def test_tau_linear_in_a_and_T():
    base = tau_from(1e-6, 10.0)
    assert tau_from(2e-6, 10.0) == pytest.approx(2.0 * base, rel=1e-14)
    assert tau_from(1e-6, 30.0) == pytest.approx(3.0 * base, rel=1e-14)


def test_temperature_round_trip():
    T = temperature_from_tau(1e-6, tau_from(1e-6, 17.25))
    assert T == pytest.approx(17.25, rel=1e-14)


def test_kappa_definition_and_scaling():
    a, omega = 1e-6, 3e13
    assert kappa_from(a, omega) == pytest.approx(C_LIGHT / (2.0 * a * omega), rel=1e-15)
    # Doubling both a and omega divides kappa by four; a omega kappa is fixed.
    assert kappa_from(2 * a, 2 * omega) == pytest.approx(kappa_from(a, omega) / 4.0, rel=1e-14)
    assert kappa_from(a, None) == 0.0


def test_zeta_l_is_l_times_tau():
    state = to_dimensionless(1e-6, 77.0)
    for l in (0, 1, 5, 100):
        assert state.zeta(l) == l * state.tau


def test_beta_from_sigma():
    state = to_dimensionless(1e-6, 300.0, sigma=19.64)
    assert state.beta == pytest.approx(2.0 * HBAR * 19.64 / (K_BOLTZMANN * 300.0), rel=1e-15)
    assert to_dimensionless(1e-6, 300.0).beta == 0.0


def test_invalid_inputs_rejected():
    with pytest.raises(ValueError):
        tau_from(-1e-6, 300.0)
    with pytest.raises(ValueError):
        tau_from(1e-6, -1.0)
    with pytest.raises(ValueError):
        kappa_from(1e-6, -3e13)
    with pytest.raises(ValueError):
        to_dimensionless(1e-6, 300.0, sigma=-1.0)
    with pytest.raises(ValueError):
        si_conductivity_to_gaussian(-1.0)


def test_conductivity_conversion():
    assert si_conductivity_to_gaussian(0.0) == 0.0
    x = 2.5e-4
    assert si_conductivity_to_gaussian(2 * x) == pytest.approx(2 * si_conductivity_to_gaussian(x), rel=1e-15)
    assert si_conductivity_to_gaussian(x) == pytest.approx(x / (4.0 * math.pi * EPSILON0_SI), rel=1e-15)
    # Round trip is the identity to machine precision.
    assert gaussian_conductivity_to_si(si_conductivity_to_gaussian(x)) == pytest.approx(x, rel=1e-15)


def test_state_is_frozen():
    state = DimensionlessState(a=1e-6, T=1.0, tau=0.01)
    with pytest.raises(Exception):
        state.tau = 0.02
