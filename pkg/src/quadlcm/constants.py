"""Euler-product constants attached to x^2 + y^2 + 1, the sieve factors that
appear in the bounds for S_k and S_{k1,k2}, and the random-set model.

The Landau-Ramanujan constant is evaluated through the identity

    prod_{p = 3 (4)} (1 - p^-s)^-2 = prod_{p = 3 (4)} (1 - p^-2s)^-1 * zeta(s) (1 - 2^-s) / beta(s),

(beta the Dirichlet L-series of the character mod 4) applied at s = 2, 4, 8, ...
Each level contributes a factor 1 + O(3^-s), so a handful of levels reach
double precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BadDensity, DegenerateFactor, PrecisionUnreachable, RegimeTooSparse
from .primes import PrimeTable, kronecker
from .represent import lcm_of_set, set_from_members

MAX_DIGITS = 10
DEFAULT_CUTOFF = 10**7
_FLOAT_FLOOR = 1e-14  # rounding allowance on top of truncation bounds

# B_2, B_4, ..., B_16
_BERNOULLI = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
]


@dataclass(frozen=True)
class EulerProductValue:
    """A computed constant. ``cutoff`` is the prime cutoff of a truncated
    product, or the number of zeta levels for the Landau-Ramanujan tower."""

    name: str
    value: float
    cutoff: int
    error_estimate: float


def hurwitz_zeta(s: float, q: float, terms: int = 24) -> float:
    """zeta(s, q) = sum_{n>=0} (n + q)^-s for s > 1, via Euler-Maclaurin."""
    head = math.fsum((n + q) ** -s for n in range(terms))
    x = terms + q
    tail = [x ** (1 - s) / (s - 1), 0.5 * x**-s]
    rising = s  # s (s+1) ... (s + 2j - 2)
    fact = 2.0  # (2j)!
    for j, b in enumerate(_BERNOULLI, start=1):
        tail.append(float(b) / fact * rising * x ** (-s - 2 * j + 1))
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
    return math.fsum([head, *tail])


def riemann_zeta(s: float) -> float:
    return hurwitz_zeta(s, 1.0)


def dirichlet_beta(s: float) -> float:
    """L(s, chi_-4) = 1 - 3^-s + 5^-s - ..."""
    return 4.0**-s * (hurwitz_zeta(s, 0.25) - hurwitz_zeta(s, 0.75))


def _tower_tail(depth: int) -> float:
    # level j has 0 <= log T_j <= 3 * 3^(-2^j); weights halve each level
    return 3.0 * 3.0 ** -(2 ** (depth + 1)) / 2 ** (depth + 1)


def landau_ramanujan(target_digits: int = MAX_DIGITS, depth: int | None = None) -> EulerProductValue:
    """L = 2^-1/2 prod_{p = 3 (4)} (1 - p^-2)^-1/2 = 0.764223653..."""
    if target_digits > MAX_DIGITS:
        raise PrecisionUnreachable(f"at most {MAX_DIGITS} digits are supported")
    if depth is None:
        depth = 1
        while _tower_tail(depth) >= 10.0 ** -(target_digits + 2):
            depth += 1
    log_terms = [-0.5 * math.log(2.0)]
    for j in range(1, depth + 1):
        s = 2.0**j
        ratio = riemann_zeta(s) * -math.expm1(-s * math.log(2.0)) / dirichlet_beta(s)
        log_terms.append(math.log(ratio) / 2 ** (j + 1))
    value = math.exp(math.fsum(log_terms))
    return EulerProductValue("L", value, depth, value * _tower_tail(depth) + _FLOAT_FLOOR)


def _primes_3_mod_4(cutoff: int, table: PrimeTable | None = None):
    table = table if table is not None and table.limit >= cutoff else PrimeTable(cutoff)
    for p in table.chunks(3, cutoff):
        yield p[p % 4 == 3].astype(np.float64)


def conjecture_c1(cutoff: int = DEFAULT_CUTOFF, table: PrimeTable | None = None) -> EulerProductValue:
    """L * prod_{p = 3 (4), p <= cutoff} (1 - 1/(p(p-1))); the neglected tail
    moves the product by a relative amount below 2/cutoff."""
    lr = landau_ramanujan()
    log_prod = math.fsum(
        v for p in _primes_3_mod_4(cutoff, table) for v in np.log1p(-1.0 / (p * (p - 1.0))).tolist()
    )
    value = lr.value * math.exp(log_prod)
    return EulerProductValue("C1", value, cutoff, value * 2.0 / cutoff + lr.error_estimate)


def prime_divisors(k: int) -> list[int]:
    out, q = [], 2
    while q * q <= k:
        if k % q == 0:
            out.append(q)
            while k % q == 0:
                k //= q
        q += 1 if q == 2 else 2
    if k > 1:
        out.append(k)
    return out


def ck_factor(k: int) -> Fraction:
    """C_k / C_1 as an exact rational."""
    if k < 1:
        raise ValueError("k must be positive")
    if k % 4 == 0:
        return Fraction(0)
    out = Fraction(math.gcd(k, 2), k)
    for p in prime_divisors(k):
        if p % 4 == 3:
            out *= Fraction(p * p - 1, p * p - p - 1)
    return out


def conjecture_ck(k: int, c1: EulerProductValue | None = None) -> EulerProductValue:
    c1 = c1 or conjecture_c1()
    factor = float(ck_factor(k))
    return EulerProductValue(f"Ck({k})", c1.value * factor, c1.cutoff, c1.error_estimate * factor)


@dataclass(frozen=True)
class CFEstimate:
    closed_form: EulerProductValue  # the limit, which collapses to L
    partial_average: float  # (1 / log kmax) * sum_{k <= kmax} C_k
    kmax: int


def ck_table(kmax: int, c1: EulerProductValue | None = None) -> np.ndarray:
    """C_k for k = 0..kmax (index 0 unused, set to 0)."""
    c1 = c1 or conjecture_c1()
    k = np.arange(kmax + 1, dtype=np.float64)
    k[0] = 1.0
    vals = np.full(kmax + 1, c1.value) / k
    vals[::2] *= 2.0
    vals[::4] = 0.0
    vals[0] = 0.0
    for chunk in PrimeTable(max(kmax, 2)).chunks(3, kmax):
        for p in chunk[chunk % 4 == 3].tolist():
            vals[p::p] *= (p * p - 1) / (p * p - p - 1)
    return vals


def conjecture_cf(kmax: int, c1: EulerProductValue | None = None) -> CFEstimate:
    if kmax < 10:
        raise ValueError("kmax must be >= 10")
    vals = ck_table(kmax, c1)
    partial = math.fsum(vals[1:].tolist()) / math.log(kmax)
    lr = landau_ramanujan()
    return CFEstimate(EulerProductValue("cF", lr.value, lr.cutoff, lr.error_estimate), partial, kmax)


def sieve_factor_product(k: int, delta: int, strength: int = 1) -> float:
    """prod over primes q | k with (delta/q) = -1 of (1 - strength/q)^-1."""
    if k < 1 or delta == 0:
        raise ValueError("need k >= 1 and delta != 0")
    if strength not in (1, 2):
        raise ValueError("strength is 1 or 2")
    out = 1.0
    for q in prime_divisors(k):
        if kronecker(delta, q) == -1:
            if q <= strength:
                raise DegenerateFactor(f"factor (1 - {strength}/{q}) vanishes")
            out /= 1.0 - strength / q
    return out


def pair_sieve_factor(k1: int, k2: int, delta: int) -> float:
    """Strength-2 factor over the primes dividing k1 k2 (k1 - k2)."""
    return sieve_factor_product(k1 * k2 * abs(k1 - k2), delta, 2)


def random_model_prediction(limit: int, density: float) -> float:
    """N delta log(1/delta) / (1 - delta)."""
    if not 0.0 < density < 1.0:
        raise BadDensity(f"density {density} outside (0, 1)")
    return limit * density * -math.log(density) / (1.0 - density)


# SplitMix64 constants
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def splitmix64(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """Outputs ``offset .. offset + count - 1`` of the SplitMix64 stream for ``seed``.

    Output i mixes the state seed + (i + 1) * 0x9E3779B97F4A7C15 (mod 2^64).
    """
    i = np.arange(offset + 1, offset + count + 1, dtype=np.uint64)
    z = np.uint64(seed % 2**64) + i * _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


@dataclass(frozen=True)
class RandomSetOutcome:
    limit: int
    density: float
    seed: int
    psi_value: float
    predicted_value: float


def random_subset(limit: int, density: float, seed: int) -> np.ndarray:
    """Members of [1, limit] drawn independently with probability ``density``.

    The threshold is floor(density * 2^64) compared against raw 64-bit outputs,
    so the draw is bit-for-bit reproducible.
    """
    threshold = np.uint64(min(int(Fraction(density) * 2**64), 2**64 - 1))
    out = []
    step = 1 << 22
    for start in range(0, limit, step):
        n = min(step, limit - start)
        hit = np.flatnonzero(splitmix64(seed, n, start) < threshold)
        out.append(hit.astype(np.int64) + start + 1)
    return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)


def simulate_random_set(
    limit: int, density: float, seed: int, table: PrimeTable | None = None
) -> RandomSetOutcome:
    """psi of a random subset, compared with the random-model prediction."""
    predicted = random_model_prediction(limit, density)
    if limit * density < 100:
        raise RegimeTooSparse(f"N * delta = {limit * density} < 100")
    rs = set_from_members(random_subset(limit, density, seed), limit)
    value = lcm_of_set(rs, table).log_value if rs.count() else 0.0
    return RandomSetOutcome(limit, density, seed, value, predicted)
