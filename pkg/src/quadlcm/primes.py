"""Prime infrastructure: an odd-only bit-packed segmented sieve, the Kronecker
symbol and Chebyshev-type prime sums (optionally restricted to a residue class).
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import BadResidueClass, LimitTooLarge, ZeroBottom

MAX_LIMIT = 2**34
DEFAULT_SEGMENT_BYTES = 2**20


def small_primes(limit: int) -> np.ndarray:
    """Plain (unsegmented) sieve, used for base primes and as a test oracle."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


class PrimeTable:
    """All primes in ``[2, limit]``.

    Odd numbers are stored one bit each (bit ``i`` stands for ``2*i + 1``), so
    the table costs about ``limit / 16`` bytes. The array is filled segment by
    segment; ``segment_bytes`` and ``threads`` affect speed only, never content.
    """

    def __init__(self, limit: int, segment_bytes: int = DEFAULT_SEGMENT_BYTES, threads: int = 1):
        if limit > MAX_LIMIT:
            raise LimitTooLarge(f"sieve limit {limit} exceeds 2^34")
        if segment_bytes <= 0:
            raise ValueError("segment_bytes must be positive")
        self.limit = int(limit)
        self.segment_bytes = int(segment_bytes)
        n_odd = (self.limit + 1) // 2 if self.limit >= 1 else 0
        self._n_odd = n_odd
        self._bits = np.zeros((n_odd + 7) // 8, dtype=np.uint8)
        if self.limit < 3:
            return
        self._base = small_primes(math.isqrt(self.limit))[1:]  # odd base primes
        seg_bits = 8 * self.segment_bytes
        starts = range(0, n_odd, seg_bits)
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                list(pool.map(self._sieve_segment, starts))
        else:
            for i0 in starts:
                self._sieve_segment(i0)
        del self._base

    def _sieve_segment(self, i0: int) -> None:
        i1 = min(i0 + 8 * self.segment_bytes, self._n_odd)
        flags = np.ones(i1 - i0, dtype=bool)
        if i0 == 0:
            flags[0] = False  # the number 1
        lo = 2 * i0 + 1
        hi = 2 * i1 - 1  # last odd number covered
        for p in self._base:
            p = int(p)
            pp = p * p
            if pp > hi:
                break
            start = max(pp, ((lo + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            flags[(start - 1) // 2 - i0 :: p] = False
        packed = np.packbits(flags, bitorder="little")
        self._bits[i0 // 8 : i0 // 8 + packed.size] = packed

    def __contains__(self, n: int) -> bool:
        n = int(n)
        if n == 2:
            return self.limit >= 2
        if n < 2 or n > self.limit or n % 2 == 0:
            return False
        i = (n - 1) // 2
        return bool((self._bits[i >> 3] >> (i & 7)) & 1)

    def count(self) -> int:
        """pi(limit)."""
        if self.limit < 2:
            return 0
        return 1 + int(np.bitwise_count(self._bits).sum(dtype=np.int64))

    def chunks(self, lo: int = 2, hi: int | None = None) -> Iterator[np.ndarray]:
        """Yield sorted int64 arrays of the primes in ``[lo, hi]``, one segment at a time."""
        hi = self.limit if hi is None else min(hi, self.limit)
        if hi < max(lo, 2):
            return
        if lo <= 2:
            yield np.array([2], dtype=np.int64)
            lo = 3
        if hi < 3:
            return
        i_lo = (lo - 1) // 2 if lo % 2 else lo // 2
        i_hi = (hi - 1) // 2  # inclusive
        step = 8 * self.segment_bytes
        i = i_lo - i_lo % 8
        while i <= i_hi:
            j = min(i + step, i_hi + 1)
            b0, b1 = i // 8, (j + 7) // 8
            flags = np.unpackbits(self._bits[b0:b1], bitorder="little")
            idx = np.flatnonzero(flags).astype(np.int64) + 8 * b0
            idx = idx[(idx >= i_lo) & (idx <= i_hi)]
            if idx.size:
                yield 2 * idx + 1
            i = j

    def primes(self, lo: int = 2, hi: int | None = None) -> np.ndarray:
        parts = list(self.chunks(lo, hi))
        if not parts:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate(parts)

    def __iter__(self) -> Iterator[int]:
        for chunk in self.chunks():
            yield from chunk.tolist()

    def __len__(self) -> int:
        return self.count()

    def __repr__(self) -> str:
        return f"PrimeTable(limit={self.limit})"


def sieve_primes(limit: int, segment_bytes: int = DEFAULT_SEGMENT_BYTES, threads: int = 1) -> PrimeTable:
    return PrimeTable(limit, segment_bytes=segment_bytes, threads=threads)


def kronecker(top: int, bottom: int) -> int:
    """Kronecker symbol (top / bottom)."""
    a, n = int(top), int(bottom)
    if n == 0:
        raise ZeroBottom("Kronecker symbol with zero bottom")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = (n & -n).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        n >>= v
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd positive n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@dataclass(frozen=True)
class ChebyshevValue:
    limit: int
    modulus: int
    residue: int
    value: float
    term_count: int


def max_power_exponents(primes: np.ndarray, limit: int) -> np.ndarray:
    """For each prime p, the largest k with p**k <= limit (0 if p > limit)."""
    p = np.asarray(primes, dtype=np.int64)
    k = (p <= limit).astype(np.int64)
    small = np.flatnonzero(p * p <= limit) if p.size else p
    q = p[small] * p[small]
    sub = small
    while sub.size:
        ok = q <= limit
        k[sub[ok]] += 1
        sub, q = sub[ok], q[ok] * p[sub[ok]]
    return k


def chebyshev(
    limit: int,
    modulus: int = 0,
    residue: int = 0,
    prime_powers: bool = True,
    table: PrimeTable | None = None,
) -> ChebyshevValue:
    """Sum of log p over primes (or prime powers) up to ``limit``, with
    p = residue (mod modulus) when ``modulus > 0``.

    ``prime_powers=True`` gives psi (von Mangoldt weights), ``False`` gives theta.
    """
    if modulus < 0:
        raise BadResidueClass("modulus must be >= 0")
    if modulus > 0 and math.gcd(residue, modulus) != 1:
        raise BadResidueClass(f"gcd({residue}, {modulus}) != 1")
    if limit < 2:
        return ChebyshevValue(limit, modulus, residue, 0.0, 0)
    if table is None or table.limit < limit:
        table = PrimeTable(limit)
    count = 0

    def terms():
        nonlocal count
        for p in table.chunks(2, limit):
            if modulus > 0:
                p = p[p % modulus == residue % modulus]
            k = max_power_exponents(p, limit) if prime_powers else np.ones_like(p)
            count += int(k.sum())
            yield from (np.log(p.astype(np.float64)) * k).tolist()

    value = math.fsum(terms())
    return ChebyshevValue(limit, modulus, residue, value, count)
