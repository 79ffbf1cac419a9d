"""Dilogarithm/trilogarithm tests against a brute-force series oracle."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from magnetocasimir.polylog import PI2_OVER_6, ZETA3, li2, li3, polylog, zeta3


def series_oracle(n: int, z: float) -> float:
    """Partial sums of sum z^k / k^n with a rigorous geometric tail bound.

    Independent of the package implementation: plain truncated series,
    length chosen so the remainder bound az^(K+1) / ((K+1)^n (1 - az))
    is below 1e-16, summed smallest-terms-first via fsum.
    """
    if z == 0.0:
        return 0.0
    az = abs(z)
    assert az < 1.0, "oracle handles |z| < 1 only"
    K = max(80, int(math.log(1e-18 * (1.0 - az)) / math.log(az)) + 2)
    k = np.arange(1, K + 1, dtype=float)
    terms = np.power(z, k) / k**n
    tail_bound = az ** (K + 1) / ((K + 1) ** n * (1.0 - az))
    total = math.fsum(terms[::-1])
    assert tail_bound <= 1e-15 * max(abs(total), 1e-30)
    return total


def zeta3_oracle() -> float:
    """Direct series for zeta(3) with an Euler-Maclaurin tail estimate."""
    N = 100_000
    k = np.arange(1, N + 1, dtype=float)
    head = math.fsum((1.0 / k**3)[::-1])
    M = N + 1
    tail = 0.5 / M**2 + 0.5 / M**3 + 0.25 / M**4
    return head + tail


def test_zero_argument_is_exact():
    assert polylog(3, 0.0) == 0.0
    assert polylog(2, 0.0) == 0.0


def test_unit_argument_closed_forms():
    assert polylog(2, 1.0) == pytest.approx(math.pi**2 / 6.0, rel=1e-13)
    assert polylog(3, 1.0) == pytest.approx(ZETA3, rel=1e-13)


def test_li3_at_036_matches_series():
    # Frozen from the series oracle (sum 0.36^k / k^3, tail below 1e-16).
    assert series_oracle(3, 0.36) == pytest.approx(0.37825191590458573, rel=1e-14)
    assert polylog(3, 0.36) == pytest.approx(0.37825191590458573, rel=1e-13)


def test_zeta3_constant_against_series_oracle():
    assert abs(zeta3() - zeta3_oracle()) <= 1e-14 * ZETA3
    assert zeta3() == polylog(3, 1.0)


def test_series_agreement_1000_random_args():
    rng = np.random.RandomState(20250810)
    zs = rng.uniform(0.0, 0.999, size=1000)
    for n in (2, 3):
        worst = max(abs(polylog(n, z) - series_oracle(n, z)) for z in zs)
        assert worst < 1e-12


def test_negative_arguments_match_series():
    rng = np.random.RandomState(7)
    for z in rng.uniform(-0.999, 0.0, size=200):
        for n in (2, 3):
            assert polylog(n, z) == pytest.approx(series_oracle(n, z), rel=1e-12, abs=1e-15)


def test_endpoint_minus_one():
    # Li2(-1) = -pi^2/12, Li3(-1) = -3 zeta(3) / 4.
    assert polylog(2, -1.0) == pytest.approx(-(math.pi**2) / 12.0, rel=1e-13)
    assert polylog(3, -1.0) == pytest.approx(-0.75 * ZETA3, rel=1e-13)


@given(st.integers(min_value=2, max_value=3), st.floats(min_value=1e-12, max_value=0.999))
@settings(max_examples=200, deadline=None)
def test_series_agreement_property(n, z):
    assert polylog(n, z) == pytest.approx(series_oracle(n, z), rel=1e-12)


def test_monotone_increasing_on_unit_interval():
    zs = np.linspace(0.0, 1.0, 201)
    for n in (2, 3):
        vals = [polylog(n, z) for z in zs]
        assert all(b > a for a, b in zip(vals, vals[1:]))


def test_order_relation_li3_below_li2():
    for z in np.linspace(0.0, 1.0, 101):
        if z == 0.0:
            assert li3(z) == li2(z) == 0.0
        else:
            assert li3(z) < li2(z)


def test_domain_errors():
    with pytest.raises(ValueError):
        polylog(3, 1.0000001)
    with pytest.raises(ValueError):
        polylog(2, -1.1)
    with pytest.raises(ValueError):
        polylog(4, 0.5)
    with pytest.raises(ValueError):
        polylog(3, float("nan"))


def test_crossover_continuity():
    # No jump where the evaluation switches branches.
    for n in (2, 3):
        below = polylog(n, 0.5 - 1e-12)
        above = polylog(n, 0.5 + 1e-12)
        assert above - below == pytest.approx(0.0, abs=1e-11)
