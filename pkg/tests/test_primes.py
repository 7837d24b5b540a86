import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadlcm.errors import BadResidueClass, LimitTooLarge, ZeroBottom
from quadlcm.primes import PrimeTable, chebyshev, kronecker, max_power_exponents, sieve_primes, small_primes


def trial_division_primes(limit):
    return [n for n in range(2, limit + 1) if all(n % d for d in range(2, math.isqrt(n) + 1))]


# ---------------------------------------------------------------- sieve


@pytest.mark.parametrize("limit, count", [(2, 1), (10, 4), (100, 25)])
def test_prime_counts_vs_trial_division(limit, count):
    table = sieve_primes(limit)
    assert list(table) == trial_division_primes(limit)
    assert table.count() == count == len(table)


def test_pi_one_million_vs_plain_sieve():
    table = PrimeTable(10**6)
    assert table.count() == 78498
    assert np.array_equal(table.primes(), small_primes(10**6))


@pytest.mark.parametrize("limit", [0, 1, 2, 3, 4, 9, 25, 97, 1000, 65537])
def test_small_limits_match_oracle(limit):
    assert list(PrimeTable(limit)) == trial_division_primes(limit)


@given(st.integers(3, 20000), st.integers(1, 64))
@settings(max_examples=40, deadline=None)
def test_segment_width_never_changes_content(limit, seg):
    assert np.array_equal(PrimeTable(limit, segment_bytes=seg).primes(), small_primes(limit))


def test_segment_width_independence_at_ten_million():
    a = PrimeTable(10**7, segment_bytes=2**16)
    b = PrimeTable(10**7, segment_bytes=2**20)
    assert np.array_equal(a._bits, b._bits)
    assert a.count() == 664579


def test_thread_count_independence():
    ref = PrimeTable(3 * 10**6, segment_bytes=2**14)
    for threads in (2, 8):
        other = PrimeTable(3 * 10**6, segment_bytes=2**14, threads=threads)
        assert np.array_equal(ref._bits, other._bits)


def test_membership_and_ranges():
    table = PrimeTable(1000)
    ref = set(trial_division_primes(1000))
    assert all((n in table) == (n in ref) for n in range(-5, 1010))
    assert table.primes(100, 200).tolist() == [p for p in sorted(ref) if 100 <= p <= 200]
    assert table.primes(14, 16).size == 0


def test_storage_is_about_limit_over_16():
    assert PrimeTable(10**6)._bits.nbytes <= 10**6 // 16 + 1


def test_limit_cap():
    with pytest.raises(LimitTooLarge):
        PrimeTable(2**34 + 1)


# ---------------------------------------------------------------- kronecker


@pytest.mark.parametrize("top, bottom, value", [(-4, 3, -1), (-4, 5, 1), (-4, 2, 0), (-3, 7, 1)])
def test_kronecker_examples(top, bottom, value):
    assert kronecker(top, bottom) == value


def test_kronecker_zero_bottom():
    with pytest.raises(ZeroBottom):
        kronecker(3, 0)


@given(st.integers(-500, 500), st.integers(1, 300), st.integers(1, 300))
def test_kronecker_multiplicative_in_bottom(a, m, n):
    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


@given(st.integers(-500, 500), st.integers(-500, 500), st.integers(1, 500))
def test_kronecker_multiplicative_in_top(a, b, n):
    assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


@given(st.integers(-200, 200).filter(lambda d: d % 4 in (0, 1) and d != 0), st.integers(1, 400))
def test_kronecker_period_for_discriminants(d, n):
    # for d = 0, 1 mod 4 the map n -> (d/n) has period |d|
    assert kronecker(d, n) == kronecker(d, n + abs(d))


@given(st.integers(-200, 200).filter(bool), st.integers(1, 400))
def test_kronecker_period_general(d, n):
    # period 4|d|, except that d = 3 mod 4 is periodic on odd n only
    if d % 4 == 3:
        n |= 1
    assert kronecker(d, n) == kronecker(d, n + 4 * abs(d))


def test_kronecker_euler_criterion():
    rng = random.Random(2024)
    odd = small_primes(10**4)[1:].tolist()
    for _ in range(200):
        q = rng.choice(odd)
        d = rng.randint(-10**6, 10**6)
        r = pow(d % q, (q - 1) // 2, q)
        legendre = -1 if r == q - 1 else r
        assert kronecker(d, q) == legendre


def test_kronecker_at_two():
    for a in range(-40, 41):
        expected = 0 if a % 2 == 0 else (1 if a % 8 in (1, 7) else -1)
        assert kronecker(a, 2) == expected


# ---------------------------------------------------------------- chebyshev


def test_chebyshev_examples():
    assert chebyshev(10).value == pytest.approx(math.log(2520), rel=1e-15)
    assert chebyshev(10, 4, 1).value == pytest.approx(math.log(5), rel=1e-15)
    assert chebyshev(3, 4, 3).value == pytest.approx(math.log(3), rel=1e-15)
    assert chebyshev(10).term_count == 7  # 2,3,4,5,7,8,9


def test_theta_excludes_powers():
    assert chebyshev(10, prime_powers=False).value == pytest.approx(math.log(210))


def test_chebyshev_matches_big_integer_lcm():
    lcm = 1
    checkpoints = {1, 2, 7, 100, 1000, 5000, 10**4}
    table = PrimeTable(10**4)
    for n in range(1, 10**4 + 1):
        lcm = math.lcm(lcm, n)
        if n in checkpoints:
            assert chebyshev(n, table=table).value == pytest.approx(math.log(lcm), rel=1e-9, abs=0)


def test_chebyshev_monotone():
    table = PrimeTable(3000)
    for m, r in ((0, 0), (4, 1), (4, 3), (3, 2)):
        vals = [chebyshev(n, m, r, table=table).value for n in range(1, 3001, 37)]
        assert all(v >= 0 for v in vals)
        assert vals == sorted(vals)


def test_residue_classes_partition():
    table = PrimeTable(10**5)
    total = chebyshev(10**5, table=table).value
    parts = [chebyshev(10**5, 4, 1, table=table).value, chebyshev(10**5, 4, 3, table=table).value]
    # the only prime outside both classes is 2, with 2^16 <= 10^5 < 2^17
    assert math.fsum(parts) + 16 * math.log(2) == pytest.approx(total, rel=1e-12)


def test_pnt_error_decreases():
    table = PrimeTable(10**7)
    errs = [abs(chebyshev(10**k, table=table).value / 10**k - 1) for k in (4, 5, 6, 7)]
    assert errs == sorted(errs, reverse=True)
    assert errs[-1] <= 0.01


def test_bad_residue_class():
    with pytest.raises(BadResidueClass):
        chebyshev(100, 4, 2)
    with pytest.raises(BadResidueClass):
        chebyshev(100, -1, 1)


def test_max_power_exponents():
    p = np.array([2, 3, 5, 7, 11, 101])
    assert max_power_exponents(p, 100).tolist() == [6, 4, 2, 2, 1, 0]
