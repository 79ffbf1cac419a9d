"""Material response models along the imaginary frequency axis."""

import math

import numpy as np
import pytest

from magnetocasimir.materials import (
    DcConductivity,
    EPS_INFINITE,
    MaterialModel,
    VACUUM,
    beta_dc,
    dimensionless_state,
    eval_eps,
    eval_mu,
    sigma0,
    validity_ratio,
)
from magnetocasimir.units import HBAR, K_BOLTZMANN


# Illustrative quartz-like configuration: the dimensionless conductivity
# strength is ~1e-12 at room temperature for fused silica, so sigma_ref is
# back-solved from beta(300 K) = 1e-12 for a chosen activation temperature.
QUARTZ_B = 1500.0
QUARTZ_SIGMA_REF = 1e-12 * K_BOLTZMANN * 300.0 / (2.0 * HBAR) * math.exp(QUARTZ_B / 300.0)


def test_constant_eps_all_orders():
    m = MaterialModel(eps0=4.0)
    for l in (0, 1, 7, 1000):
        assert eval_eps(m, l, 300.0) == 4.0


def test_dc_eps_arithmetic():
    # Pick sigma_ref so that beta(T) = 2 exactly, then eps_1 = eps0 + 2.
    T = 10.0
    b = 5.0
    sigma_ref = 2.0 * K_BOLTZMANN * T / (2.0 * HBAR) * math.exp(b / T)
    m = MaterialModel(eps0=4.0, dc=DcConductivity(sigma_ref=sigma_ref, b=b))
    assert beta_dc(m, T) == pytest.approx(2.0, rel=1e-14)
    assert eval_eps(m, 1, T) == pytest.approx(6.0, rel=1e-14)
    assert eval_eps(m, 2, T) == pytest.approx(5.0, rel=1e-14)


def test_dc_eps_zero_frequency_marker():
    m = MaterialModel(eps0=4.0, dc=DcConductivity(sigma_ref=10.0, b=100.0))
    assert eval_eps(m, 0, 300.0) is EPS_INFINITE
    # Degenerate conductivity: nothing diverges.
    m0 = MaterialModel(eps0=4.0, dc=DcConductivity(sigma_ref=0.0, b=100.0))
    assert eval_eps(m0, 0, 300.0) == 4.0


def test_dc_eps_decreasing_toward_static():
    # sigma_ref chosen so beta(T) is appreciable and the 1/l decay is
    # resolvable in double precision.
    T, b = 300.0, 100.0
    sigma_ref = 0.1 * K_BOLTZMANN * T / (2.0 * HBAR) * math.exp(b / T)
    m = MaterialModel(eps0=4.0, dc=DcConductivity(sigma_ref=sigma_ref, b=b))
    vals = [eval_eps(m, l, T) for l in range(1, 30)]
    assert all(a > b_ for a, b_ in zip(vals, vals[1:]))
    assert all(v >= 4.0 for v in vals)
    assert vals[-1] == pytest.approx(4.0, rel=1e-2)


def test_debye_mu_static_and_highfrequency():
    m = MaterialModel(mu0=3.0, omega_m=3e13)
    assert eval_mu(m, 0.0, kappa_m=7.0) == 3.0
    assert eval_mu(m, 1.0, kappa_m=1.0) == pytest.approx(2.0, rel=1e-15)
    assert eval_mu(m, 1e9, kappa_m=1.0) == pytest.approx(1.0, rel=1e-6)


def test_debye_mu_monotone_and_trivial_cases():
    m = MaterialModel(mu0=3.0, omega_m=3e13)
    zs = np.linspace(0.0, 50.0, 400)
    vals = eval_mu(m, zs, kappa_m=2.0)
    assert np.all(np.diff(vals) < 0.0)
    assert np.all(vals >= 1.0)
    flat = MaterialModel(mu0=1.0, omega_m=3e13)
    assert np.all(eval_mu(flat, zs, kappa_m=2.0) == 1.0)
    const = MaterialModel(mu0=5.0)
    assert np.all(eval_mu(const, zs, kappa_m=2.0) == 5.0)


def test_beta_quartz_configuration():
    m = MaterialModel(eps0=3.8, dc=DcConductivity(sigma_ref=QUARTZ_SIGMA_REF, b=QUARTZ_B))
    assert beta_dc(m, 300.0) == pytest.approx(1e-12, rel=1e-12)


def test_beta_zero_without_carriers():
    m = MaterialModel(eps0=4.0, dc=DcConductivity(sigma_ref=0.0, b=100.0))
    assert beta_dc(m, 10.0) == 0.0
    with pytest.raises(ValueError):
        beta_dc(MaterialModel(eps0=4.0), 10.0)


def test_beta_activation_ratio():
    # beta(T/2) / beta(T) = 2 exp(-b/T) from the activation law.
    b, T = 120.0, 40.0
    m = MaterialModel(eps0=4.0, dc=DcConductivity(sigma_ref=5.0, b=b))
    assert beta_dc(m, T / 2.0) / beta_dc(m, T) == pytest.approx(2.0 * math.exp(-b / T), rel=1e-12)


def test_beta_vanishes_faster_than_any_power():
    b = 50.0
    m = MaterialModel(eps0=4.0, dc=DcConductivity(sigma_ref=1.0, b=b))
    Ts = [4.0 / 2**j for j in range(5)]
    for k in range(1, 6):
        ratios = [beta_dc(m, T) / T**k for T in Ts]
        assert all(r1 > r2 for r1, r2 in zip(ratios, ratios[1:]))
        assert ratios[-1] < 1e-3 * ratios[0]


def test_validity_ratio():
    assert validity_ratio(MaterialModel(eps0=4.0), 1, 300.0) == 0.0
    m0 = MaterialModel(eps0=4.0, dc=DcConductivity(sigma_ref=0.0, b=100.0))
    assert validity_ratio(m0, 1, 300.0) == 0.0
    # beta = 1e-12, eps0 = 4, l = 1 gives 2.5e-13.
    m = MaterialModel(eps0=4.0, dc=DcConductivity(sigma_ref=QUARTZ_SIGMA_REF, b=QUARTZ_B))
    assert validity_ratio(m, 1, 300.0) == pytest.approx(2.5e-13, rel=1e-10)
    assert validity_ratio(m, 10, 300.0) == pytest.approx(2.5e-14, rel=1e-10)
    with pytest.raises(ValueError):
        validity_ratio(m, 0, 300.0)


def test_finite_response_at_nonzero_orders():
    m = MaterialModel(eps0=2.5, mu0=3.5, omega_m=1e13, dc=DcConductivity(sigma_ref=20.0, b=50.0))
    state = dimensionless_state(m, 1e-6, 300.0)
    for l in range(1, 50):
        eps = eval_eps(m, l, 300.0)
        mu = eval_mu(m, state.zeta(l), state.kappa_m)
        assert math.isfinite(eps) and eps >= 1.0
        assert math.isfinite(mu) and mu >= 1.0


def test_model_validation():
    with pytest.raises(ValueError):
        MaterialModel(eps0=0.5)
    with pytest.raises(ValueError):
        MaterialModel(mu0=0.0)
    with pytest.raises(ValueError):
        MaterialModel(omega_m=-1.0)
    with pytest.raises(ValueError):
        DcConductivity(sigma_ref=-1.0, b=10.0)
    with pytest.raises(ValueError):
        DcConductivity(sigma_ref=1.0, b=0.0)
    assert VACUUM.eps0 == VACUUM.mu0 == 1.0


def test_without_dc_strips_only_the_carrier_term():
    m = MaterialModel(eps0=2.0, mu0=3.0, omega_m=1e13, dc=DcConductivity(sigma_ref=1.0, b=10.0))
    plain = m.without_dc()
    assert plain.dc is None
    assert (plain.eps0, plain.mu0, plain.omega_m) == (2.0, 3.0, 1e13)


def test_sigma0_activation():
    m = MaterialModel(eps0=2.0, dc=DcConductivity(sigma_ref=7.0, b=30.0))
    assert sigma0(m, 30.0) == pytest.approx(7.0 * math.exp(-1.0), rel=1e-14)
    assert sigma0(MaterialModel(eps0=2.0), 30.0) == 0.0
