import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
import scipy.special
from hypothesis import given
from hypothesis import strategies as st

from quadlcm import constants as C
from quadlcm.errors import BadDensity, DegenerateFactor, PrecisionUnreachable, RegimeTooSparse
from quadlcm.primes import PrimeTable, kronecker, small_primes

# published value of the Landau-Ramanujan constant
LR_REFERENCE = 0.76422365358922066299


@pytest.fixture(scope="module")
def c1():
    return C.conjecture_c1()


# ---------------------------------------------------------------- special functions


@pytest.mark.parametrize("s", [2.0, 3.0, 4.0, 8.0, 16.0, 32.0, 2.5])
def test_zeta_vs_scipy(s):
    assert C.riemann_zeta(s) == pytest.approx(scipy.special.zeta(s), rel=2e-15)


@pytest.mark.parametrize("s", [2.0, 4.0, 8.0, 16.0, 3.5])
def test_beta_vs_mpmath(s):
    ref = float(mpmath.dirichlet(s, [0, 1, 0, -1]))
    assert C.dirichlet_beta(s) == pytest.approx(ref, rel=2e-15)


def test_catalan():
    assert C.dirichlet_beta(2.0) == pytest.approx(float(mpmath.catalan), rel=1e-15)


@pytest.mark.parametrize("s, q", [(2.0, 0.25), (3.0, 0.75), (4.0, 1.5)])
def test_hurwitz_vs_scipy(s, q):
    assert C.hurwitz_zeta(s, q) == pytest.approx(scipy.special.zeta(s, q), rel=2e-15)


# ---------------------------------------------------------------- Landau-Ramanujan


def test_landau_ramanujan_value():
    lr = C.landau_ramanujan(5)
    assert abs(lr.value - 0.76422) <= 5e-6
    assert lr.error_estimate < 1e-5
    assert abs(C.landau_ramanujan().value - LR_REFERENCE) < 1e-12


def test_landau_ramanujan_coarse():
    assert abs(C.landau_ramanujan(3).value - 0.764) <= 0.001


def test_landau_ramanujan_digit_cap():
    with pytest.raises(PrecisionUnreachable):
        C.landau_ramanujan(11)


def test_landau_ramanujan_vs_naive_product():
    # direct truncated product converges like 1/P; agreement to that order only
    p = small_primes(10**6).astype(np.float64)
    p = p[p % 4 == 3]
    naive = 2**-0.5 * math.exp(-0.5 * math.fsum(np.log1p(-(p**-2)).tolist()))
    assert naive == pytest.approx(C.landau_ramanujan().value, rel=1e-6)


@pytest.mark.parametrize("depth", [1, 2, 3, 4])
def test_tower_depth_stability(depth):
    a = C.landau_ramanujan(depth=depth)
    b = C.landau_ramanujan(depth=depth + 1)
    assert abs(a.value - b.value) <= a.error_estimate


# ---------------------------------------------------------------- C_1, C_k, c_F


def test_c1_value(c1):
    lr = C.landau_ramanujan()
    assert abs(c1.value - 0.610534) <= 5e-6
    assert abs(c1.value / lr.value - 0.79889) <= 5e-6
    assert c1.value < lr.value


def test_c1_truncation_stability(c1):
    wider = C.conjecture_c1(2 * 10**7)
    assert abs(wider.value - c1.value) < c1.error_estimate


def test_c1_small_cutoffs_converge():
    vals = [C.conjecture_c1(10**k) for k in (3, 4, 5)]
    for a, b in zip(vals, vals[1:]):
        assert abs(a.value - b.value) < a.error_estimate


def test_ck_examples(c1):
    assert C.conjecture_ck(4, c1).value == 0.0
    assert C.conjecture_ck(2, c1).value == c1.value
    assert C.ck_factor(3) == Fraction(8, 15)
    assert C.conjecture_ck(3, c1).value == pytest.approx(0.325618, abs=1e-6)


def test_ck_positive_unless_multiple_of_four(c1):
    table = C.ck_table(10**4, c1)
    for k in range(1, 10**4 + 1):
        assert (table[k] == 0) == (k % 4 == 0)
        assert table[k] <= 2 * c1.value


def test_ck_table_matches_formula(c1):
    table = C.ck_table(2000, c1)
    for k in range(1, 2001):
        assert table[k] == pytest.approx(float(C.ck_factor(k)) * c1.value, rel=1e-13)


@given(st.integers(1, 400).map(lambda n: 2 * n - 1), st.integers(1, 400).map(lambda n: 2 * n - 1))
def test_ck_multiplicative_over_odd_parts(m, n):
    if math.gcd(m, n) != 1:
        return
    # k C_k / (k, 2), i.e. the Euler factor part, is multiplicative
    def h(k):
        return C.ck_factor(k) * k / math.gcd(k, 2)

    assert h(m * n) == h(m) * h(n)


def test_cf_partial_average(c1):
    lr = C.landau_ramanujan()
    cf = C.conjecture_cf(10**6, c1)
    assert cf.closed_form.value == lr.value
    assert 0.9 * lr.value <= cf.partial_average <= 1.1 * lr.value
    small = C.conjecture_cf(10, c1)
    assert 0 < small.partial_average < math.inf
    with pytest.raises(ValueError):
        C.conjecture_cf(9, c1)


# ---------------------------------------------------------------- sieve factors


@pytest.mark.parametrize("k, delta, strength, value", [(3, -4, 1, 1.5), (2, -4, 1, 1.0), (21, -4, 1, 1.75)])
def test_sieve_factor_examples(k, delta, strength, value):
    assert C.sieve_factor_product(k, delta, strength) == pytest.approx(value, rel=1e-15)


def test_pair_sieve_factor():
    # k1 k2 (k1 - k2) for (3, 2): 6, prime divisors 2 and 3; only 3 is inert for -4
    assert C.pair_sieve_factor(3, 2, -4) == pytest.approx(3.0)
    with pytest.raises(DegenerateFactor):
        C.sieve_factor_product(2, 5, 2)  # (5/2) = -1


@given(st.integers(1, 5000), st.integers(-200, 200).filter(bool))
def test_sieve_factor_at_least_one(k, d):
    v = C.sieve_factor_product(k, d, 1)
    assert v >= 1.0
    if all(kronecker(d, q) != -1 for q in C.prime_divisors(k)):
        assert v == 1.0


@given(st.integers(1, 10**6))
def test_prime_divisors(k):
    ps = C.prime_divisors(k)
    assert all(int(p) in PrimeTable(max(p, 2)) for p in ps)
    rest = k
    for p in ps:
        while rest % p == 0:
            rest //= p
    assert rest == 1


# ---------------------------------------------------------------- random model


def test_random_model_examples():
    assert C.random_model_prediction(10**6, 0.01) == pytest.approx(46517, abs=1)
    assert C.random_model_prediction(1000, 0.5) == pytest.approx(1000 * math.log(2), rel=1e-15)
    for bad in (1.0, 0.0, -0.1, 1.5):
        with pytest.raises(BadDensity):
            C.random_model_prediction(1000, bad)


def test_splitmix64_reference():
    # reference outputs of SplitMix64 seeded with 0
    out = C.splitmix64(0, 3).tolist()
    assert out == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]
    assert C.splitmix64(0, 2, offset=1).tolist() == out[1:]


def test_simulate_reproducible():
    a = C.simulate_random_set(10**4, 0.3, 42)
    b = C.simulate_random_set(10**4, 0.3, 42)
    assert a == b
    assert C.simulate_random_set(10**4, 0.3, 43).psi_value != a.psi_value
    assert a.predicted_value == C.random_model_prediction(10**4, 0.3)
    assert a.psi_value >= 0


def test_random_subset_density():
    sub = C.random_subset(10**6, 0.25, 7)
    assert abs(sub.size / 10**6 - 0.25) < 0.005
    assert np.all(np.diff(sub) > 0) and sub[0] >= 1 and sub[-1] <= 10**6


@pytest.mark.parametrize("seed", range(5))
def test_simulate_half_density(seed):
    out = C.simulate_random_set(10**4, 0.5, seed)
    assert abs(out.psi_value / (10**4 * math.log(2)) - 1) <= 0.15


def test_simulate_too_sparse():
    with pytest.raises(RegimeTooSparse):
        C.simulate_random_set(1000, 0.001, 0)
