import cmath
import math

import pytest
from hypothesis import given, strategies as st

from gauss_factor.core import (
    DEFAULT_THRESHOLD,
    CheckerConfig,
    Classification,
    ConfigError,
    check_factor_exact,
    classify,
    cosine_sum,
    default_M,
    gauss_sum,
)
from gauss_factor.exact import InvalidDivisorError, TrialFactor


def direct_gauss(N, ell, M):
    # double-precision oracle straight from the definition
    return sum(cmath.exp(-2j * math.pi * m * m * N / ell) for m in range(M + 1)) / (M + 1)


def test_factor_is_exactly_one():
    r = gauss_sum(157573, 17, 10)
    assert (r.real_part, r.imag_part, r.magnitude) == (1.0, 0.0, 1.0)
    assert r.classification is Classification.FACTOR


def test_hand_computed_small_case():
    r = gauss_sum(15, 4, 1)
    assert r.real_part == pytest.approx(0.5, abs=1e-15)
    assert r.imag_part == pytest.approx(0.5, abs=1e-15)
    assert r.magnitude == pytest.approx(0.7071067811865476, abs=1e-12)


@pytest.mark.parametrize("M, expected", [
    # frozen from a 60-digit mpmath evaluation of the unreduced definition
    (10, (-0.085426601889628035, 0.031092740302333521, 0.090909090909090909)),
    (20, (0.10063527611680184, -0.063182280777994133, 0.11882533148876225)),
])
def test_nonfactor_18(M, expected):
    r = gauss_sum(157573, 18, M)
    assert (r.real_part, r.imag_part, r.magnitude) == pytest.approx(expected, abs=1e-12)
    assert abs(direct_gauss(157573, 18, M) - complex(r.real_part, r.imag_part)) < 1e-9
    assert r.classification is Classification.NONFACTOR


def test_cosine_examples():
    assert cosine_sum(157573, 17, 10).real_part == 1.0
    assert cosine_sum(15, 4, 1).real_part == pytest.approx(0.5, abs=1e-15)
    damped = cosine_sum(157573, 17, 10, CheckerConfig(damping_rate=0.1))
    geometric = (1 - math.exp(-1.1)) / (1 - math.exp(-0.1)) / 11
    assert damped.real_part == pytest.approx(geometric, abs=1e-12)
    assert damped.real_part == pytest.approx(0.63731019113260282, abs=1e-12)
    assert damped.imag_part == 0.0


def test_classify_boundary():
    cfg = CheckerConfig(threshold=0.7071)
    assert classify(1.0, cfg) is Classification.FACTOR
    assert classify(0.3, cfg) is Classification.NONFACTOR
    assert classify(0.7071, cfg) is Classification.FACTOR
    assert classify(DEFAULT_THRESHOLD) is Classification.FACTOR


def test_check_factor_exact():
    assert check_factor_exact(157573, 17) is Classification.FACTOR
    assert check_factor_exact(157573, 18) is Classification.NONFACTOR
    assert check_factor_exact(157573, TrialFactor(157573, 9268)) is Classification.FACTOR_BY_RATIO


def test_invalid_divisor_propagates():
    with pytest.raises(InvalidDivisorError):
        gauss_sum(10, 0, 3)
    with pytest.raises(InvalidDivisorError):
        cosine_sum(10, 1, 3)


def fourth_root_ceil_oracle(N):
    r = 0
    while r ** 4 < N:
        r += 1
    return r


def test_default_M():
    assert default_M(16) == 2
    assert 19 ** 4 == 130321 and 20 ** 4 == 160000
    assert default_M(157573) == 20
    assert default_M(10000) == 10
    for N in range(2, 3000):
        assert default_M(N) == fourth_root_ceil_oracle(N)
    big = 10 ** 40 + 1
    assert default_M(big) == 10 ** 10 + 1
    assert default_M(10 ** 40) == 10 ** 10


@pytest.mark.parametrize("kw", [{"threshold": 0.0}, {"threshold": 1.0}, {"threshold": 1.5},
                                {"damping_rate": -0.1}, {"default_M_policy": "sqrt"}])
def test_config_validation(kw):
    with pytest.raises(ConfigError):
        CheckerConfig(**kw)


def test_factor_criterion_exhaustive_small():
    for N in range(2, 400):
        M = default_M(N)
        for ell in range(2, N + 1):
            mag = gauss_sum(N, ell, M).magnitude
            if N % ell == 0:
                assert mag == 1.0
            else:
                assert mag < 1 - 1e-9


@given(st.integers(2, 10**30), st.integers(2, 10**6), st.integers(1, 50), st.integers(0, 80))
def test_magnitude_bounds_and_consistency(N, p, q, M):
    if p < 2 * q:
        return
    g = gauss_sum(N, TrialFactor(p, q), M)
    c = cosine_sum(N, TrialFactor(p, q), M)
    assert g.magnitude <= 1 + 1e-12
    assert abs(g.magnitude - math.hypot(g.real_part, g.imag_part)) < 1e-12
    assert abs(c.real_part - g.real_part) < 1e-12
    assert (g.classification is Classification.FACTOR) == (g.magnitude >= g.threshold)


@given(st.integers(1, 10**4), st.integers(2, 500), st.integers(1, 60))
def test_damping_monotone_for_factors(k, ell, M):
    N = k * ell
    rates = [0.0, 0.01, 0.1, 0.5, 2.0]
    values = [cosine_sum(N, ell, M, CheckerConfig(damping_rate=g)).real_part for g in rates]
    assert all(a > b for a, b in zip(values, values[1:]))


@given(st.integers(2, 10**6), st.integers(2, 10**4), st.integers(0, 40))
def test_matches_direct_definition(N, ell, M):
    r = gauss_sum(N, ell, M)
    assert abs(direct_gauss(N, ell, M) - complex(r.real_part, r.imag_part)) < 1e-7


def test_big_n_phases_exact():
    N = 1062885837863046188098307
    r = cosine_sum(N, 999983, 1000)
    # independent route: reduce with Python ints per term, no recurrence
    ref = sum(math.cos(2 * math.pi * ((m * m * N) % 999983) / 999983) for m in range(1001)) / 1001
    assert abs(r.real_part - ref) < 1e-12
