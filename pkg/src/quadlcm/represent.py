"""Represented sets {0 < n <= N : n = F(x, y)} and the arithmetic built on them:
psi_F(N) (log of the LCM of the set), the density delta_F(N), the prime
multiple counts S_k(N) and S_{k1,k2}(N), the closed form for x^2 + y^2, the
box variant and the ratio R(N) for x^2 + y^2 + 1.

Sets are bitsets with one bit per integer in [0, N], built value-block by
value-block. Each block is independent, so blocks may be built on several
threads; the result is the same whatever the thread count.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from . import poly as _poly
from .errors import BadOrder, EmptySet, LimitTooLarge, ModeMismatch, TooLarge
from .poly import QuadraticPolynomial
from .primes import PrimeTable

EXACT_DEFINITE = "exact-definite"
EXACT_UNIVARIATE = "exact-univariate"
WINDOW = "window"
RANDOM = "random"

DEFAULT_WINDOW_FACTOR = 4.0
BLOCK = 1 << 24  # integers per build block; must be a multiple of 8
CHUNK_POINTS = 1 << 20  # lattice points evaluated per numpy batch
_INT64_SAFE = 1 << 62
FIGURE_ONE_CAP = 2**30

X2Y2 = QuadraticPolynomial(1, 0, 1, 0, 0, 0)
X2Y2_PLUS_1 = QuadraticPolynomial(1, 0, 1, 0, 0, 1)


# --------------------------------------------------------------------------
# bitset container


@dataclass(frozen=True, eq=False)
class RepresentedSet:
    """Bitset over [0, limit]; bit n is set iff n was found as a value of ``poly``.

    In the exact modes the set is complete. In window mode only points with
    |x|, |y| <= window_factor * sqrt(limit) are enumerated, so the set is a
    sound under-approximation (``approximate`` is True).
    """

    limit: int
    bits: np.ndarray
    mode: str
    poly: QuadraticPolynomial | None = None
    window_factor: float | None = None

    @property
    def approximate(self) -> bool:
        return self.mode == WINDOW

    def __contains__(self, n: int) -> bool:
        n = int(n)
        if n < 0 or n > self.limit:
            return False
        return bool((self.bits[n >> 3] >> (n & 7)) & 1)

    def contains_many(self, values: np.ndarray) -> np.ndarray:
        v = np.asarray(values, dtype=np.int64)
        out = np.zeros(v.shape, dtype=bool)
        ok = (v >= 0) & (v <= self.limit)
        w = v[ok]
        out[ok] = ((self.bits[w >> 3] >> (w & 7).astype(np.uint8)) & 1).astype(bool)
        return out

    def count(self, upto: int | None = None) -> int:
        """Number of members n <= upto (default: all)."""
        upto = self.limit if upto is None else min(upto, self.limit)
        if upto < 0:
            return 0
        full = (upto + 1) // 8
        total = int(np.bitwise_count(self.bits[:full]).sum(dtype=np.int64))
        rem = (upto + 1) % 8
        if rem:
            total += int(np.bitwise_count(self.bits[full] & np.uint8((1 << rem) - 1)))
        return total

    def __len__(self) -> int:
        return self.count()

    def dense(self, lo: int, hi: int) -> np.ndarray:
        """Boolean membership of the integers in [lo, hi)."""
        hi = min(hi, self.limit + 1)
        b0 = lo // 8
        flags = np.unpackbits(self.bits[b0 : (hi + 7) // 8], bitorder="little")
        return flags[lo - 8 * b0 : hi - 8 * b0].astype(bool)

    def members(self) -> np.ndarray:
        flags = np.unpackbits(self.bits, bitorder="little")[: self.limit + 1]
        return np.flatnonzero(flags).astype(np.int64)

    def restricted(self, limit: int) -> "RepresentedSet":
        """The same set cut down to [0, limit] (limit <= self.limit)."""
        if limit > self.limit:
            raise ValueError("can only restrict to a smaller limit")
        nbytes = (limit + 1 + 7) // 8
        bits = self.bits[:nbytes].copy()
        rem = (limit + 1) % 8
        if rem:
            bits[-1] &= np.uint8((1 << rem) - 1)
        return RepresentedSet(limit, bits, self.mode, self.poly, self.window_factor)

    def issubset(self, other: "RepresentedSet") -> bool:
        if self.limit > other.limit:
            return self.restricted(other.limit).issubset(other) and self.count() == self.count(other.limit)
        n = self.bits.size
        return bool(np.all((self.bits & ~other.bits[:n]) == 0))


def set_from_members(members: Iterable[int], limit: int, mode: str = RANDOM) -> RepresentedSet:
    flags = np.zeros(limit + 1, dtype=bool)
    m = np.asarray(list(members) if not isinstance(members, np.ndarray) else members, dtype=np.int64)
    m = m[(m > 0) & (m <= limit)]
    flags[m] = True
    return RepresentedSet(limit, np.packbits(flags, bitorder="little"), mode)


# --------------------------------------------------------------------------
# exact integer helpers


def _interval_le(A: int, B: int, C: int) -> tuple[int, int] | None:
    """Integers t with A t^2 + B t + C <= 0, for A > 0."""
    disc = B * B - 4 * A * C
    if disc < 0:
        return None
    s = math.isqrt(disc)
    lo, hi = -((B + s) // (2 * A)), (-B + s) // (2 * A)
    return (lo, hi) if lo <= hi else None


def _isqrt_array(disc: np.ndarray) -> np.ndarray:
    if disc.dtype == object:
        return np.array([math.isqrt(int(d)) for d in disc], dtype=object)
    s = np.floor(np.sqrt(disc.astype(np.float64))).astype(np.int64)
    while True:
        over = s * s > disc
        if not over.any():
            break
        s[over] -= 1
    while True:
        under = (s + 1) * (s + 1) <= disc
        if not under.any():
            break
        s[under] += 1
    return s


def _interval_le_array(A: int, B: np.ndarray, C: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised ``_interval_le`` over arrays B, C; empty rows get lo > hi."""
    disc = B * B - 4 * A * C
    neg = disc < 0
    disc = np.where(neg, 0, disc)
    s = _isqrt_array(disc)
    lo = -((B + s) // (2 * A))
    hi = (-B + s) // (2 * A)
    lo = np.where(neg, 1, lo)
    hi = np.where(neg, 0, hi)
    return lo, hi


def _expand_ranges(xs, starts, lengths) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield (x, y) point batches for y in [start, start + length) per x."""
    keep = lengths > 0
    xs, starts, lengths = xs[keep], starts[keep], lengths[keep].astype(np.int64)
    if not xs.size:
        return
    cum = np.cumsum(lengths)
    i = 0
    while i < xs.size:
        base = cum[i - 1] if i else 0
        j = int(np.searchsorted(cum, base + CHUNK_POINTS, side="right"))
        j = max(j, i + 1)
        ln = lengths[i:j]
        total = int(ln.sum())
        offs = np.cumsum(ln) - ln
        x = np.repeat(xs[i:j], ln)
        st = np.repeat(starts[i:j] - offs.astype(starts.dtype), ln)
        y = np.arange(total, dtype=np.int64)
        if st.dtype == object:
            y = y.astype(object)
        yield x, y + st
        i = j


def _magnitude(P: QuadraticPolynomial, X: int, Y: int, M: int) -> int:
    a, b, c, e, f, g = (abs(v) for v in P.coefficients)
    disc_bound = (b * X + f) ** 2 + 4 * c * (a * X * X + e * X + g + abs(M))
    value_bound = a * X * X + b * X * Y + c * Y * Y + e * X + f * Y + g
    return max(disc_bound, value_bound)


# --------------------------------------------------------------------------
# value generators for one block [lo, hi] of target values


def _definite_values(P: QuadraticPolynomial, m1: int, m2: int) -> Iterator[np.ndarray]:
    """All values P(x, y) in [m1, m2] (with multiplicity) for positive-definite P."""
    a, b, c, e, f, g = P.coefficients
    d = _poly.invariants(P)
    delta, alpha, beta = d.delta, d.alpha, d.beta
    # x admits a real y with P <= M iff delta x^2 + 2 alpha x + f^2 - 4c(g - M) >= 0
    xr = _interval_le(-delta, -2 * alpha, -(f * f - 4 * c * (g - m2)))
    yr = _interval_le(-delta, -2 * beta, -(e * e - 4 * a * (g - m2)))
    if xr is None or yr is None:
        return
    X = max(abs(xr[0]), abs(xr[1]))
    Y = max(abs(yr[0]), abs(yr[1]))
    dtype = np.int64 if _magnitude(P, X, Y, m2) < _INT64_SAFE else object
    step = 1 << 16
    for x0 in range(xr[0], xr[1] + 1, step):
        xs = np.arange(x0, min(x0 + step, xr[1] + 1), dtype=np.int64).astype(dtype)
        Bq = b * xs + f
        Cq = a * xs * xs + e * xs + g
        ol, oh = _interval_le_array(c, Bq, Cq - m2)
        il, ih = _interval_le_array(c, Bq, Cq - (m1 - 1))
        inner = il <= ih
        outer = ol <= oh
        len1 = np.where(outer, np.where(inner, il - ol, oh - ol + 1), 0)
        len2 = np.where(outer & inner, oh - ih, 0)
        all_x = np.concatenate([xs, xs])
        starts = np.concatenate([ol, ih + 1])
        lengths = np.concatenate([len1, len2]).astype(np.int64)
        for x, y in _expand_ranges(all_x, starts, lengths):
            yield P(x, y)


def _window_values(F: QuadraticPolynomial, half: int, lo: int, hi: int) -> Iterator[np.ndarray]:
    ys = np.arange(-half, half + 1, dtype=np.int64)
    dtype = np.int64 if _magnitude(F, half, half, 0) < _INT64_SAFE else object
    ys = ys.astype(dtype)
    rows = max(1, CHUNK_POINTS // ys.size)
    for x0 in range(-half, half + 1, rows):
        xs = np.arange(x0, min(x0 + rows, half + 1), dtype=np.int64).astype(dtype)
        v = F(xs[:, None], ys[None, :]).ravel()
        yield v[(v >= lo) & (v <= hi)]


def _univariate_values(uq: _poly.UnivariateQuadratic, limit: int) -> np.ndarray | None:
    """All values 0 < f(t) <= limit of a quadratic f; None when f is linear."""
    s, r, t0 = int(uq.s), int(uq.r), int(uq.t0)
    if s == 0:
        return None
    tr = _interval_le(s, r, t0 - limit) if s > 0 else _interval_le(-s, -r, -t0 + 1)
    if tr is None:
        return np.zeros(0, dtype=np.int64)
    t = np.arange(tr[0], tr[1] + 1, dtype=np.int64)
    v = s * t * t + r * t + t0
    return v[(v > 0) & (v <= limit)]


# --------------------------------------------------------------------------
# set construction


def default_mode(F: QuadraticPolynomial) -> str:
    if _poly.derivatives_dependent(F):
        return EXACT_UNIVARIATE
    if _poly.invariants(F).delta < 0:
        return EXACT_DEFINITE
    return WINDOW


def window_half_width(limit: int, factor: float) -> int:
    """floor(factor * sqrt(limit)), exactly."""
    q = Fraction(factor) ** 2 * limit
    return math.isqrt(q.numerator // q.denominator)


def build_represented_set(
    F: QuadraticPolynomial,
    limit: int,
    mode: str | None = None,
    window_factor: float = DEFAULT_WINDOW_FACTOR,
    threads: int = 1,
    half_width: int | None = None,
) -> RepresentedSet:
    """Mark every n in (0, limit] reached by F under the chosen enumeration mode.

    ``mode`` defaults to the exact mode that applies to F, falling back to
    window mode for indefinite and parabolic quadratic parts. ``half_width``
    overrides the window box size (used for the box LCM).
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    mode = mode or default_mode(F)
    inv = _poly.invariants(F)
    if mode == EXACT_DEFINITE:
        if inv.delta >= 0:
            raise ModeMismatch("exact-definite mode needs a definite quadratic part")
        sign = 1 if inv.definiteness == _poly.POSITIVE_DEFINITE else -1
        P = F if sign == 1 else QuadraticPolynomial(*(-v for v in F.coefficients))

        def fill(block, lo, hi):
            m1, m2 = (lo, hi) if sign == 1 else (-hi, -lo)
            for v in _definite_values(P, m1, m2):
                idx = (sign * v - lo).astype(np.int64)
                block[idx] = True

    elif mode == EXACT_UNIVARIATE:
        if not _poly.derivatives_dependent(F):
            raise ModeMismatch("exact-univariate mode needs dependent derivatives")
        uq = _poly.reduce_to_univariate(F)
        values = _univariate_values(uq, limit)

        def fill(block, lo, hi):
            if values is None:
                step = abs(int(uq.r))
                first = lo + (int(uq.t0) - lo) % step
                block[first - lo :: step] = True
            else:
                v = values[(values >= lo) & (values <= hi)]
                block[v - lo] = True

    elif mode == WINDOW:
        half = half_width if half_width is not None else window_half_width(limit, window_factor)

        def fill(block, lo, hi):
            for v in _window_values(F, half, lo, hi):
                block[(v - lo).astype(np.int64)] = True

    else:
        raise ModeMismatch(f"unknown mode {mode!r}")

    bits = np.zeros((limit + 1 + 7) // 8, dtype=np.uint8)

    def build_block(start: int) -> None:
        end = min(start + BLOCK, limit + 1)
        block = np.zeros(end - start, dtype=bool)
        lo = max(start, 1)
        if lo < end:
            fill(block[lo - start :], lo, end - 1)
        packed = np.packbits(block, bitorder="little")
        bits[start // 8 : start // 8 + packed.size] = packed

    starts = range(0, limit + 1, BLOCK)
    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(build_block, starts))
    else:
        for s in starts:
            build_block(s)
    wf = None
    if mode == WINDOW:
        wf = window_factor if half_width is None else half_width / math.sqrt(limit)
    return RepresentedSet(limit, bits, mode, F, wf)


def delta(rs: RepresentedSet) -> float:
    return rs.count() / rs.limit


# --------------------------------------------------------------------------
# LCM of a set


@dataclass(frozen=True, eq=False)
class LcmFactorization:
    """LCM of a set as prime -> exponent arrays (primes ascending, exponents >= 1)."""

    primes: np.ndarray
    exponents: np.ndarray
    log_value: float

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.primes.tolist(), self.exponents.tolist()))

    def __getitem__(self, p: int) -> int:
        i = int(np.searchsorted(self.primes, p))
        if i < self.primes.size and self.primes[i] == p:
            return int(self.exponents[i])
        return 0

    def __len__(self) -> int:
        return int(self.primes.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LcmFactorization):
            return NotImplemented
        return np.array_equal(self.primes, other.primes) and np.array_equal(self.exponents, other.exponents)

    def multiplicity_excess(self) -> float:
        """Sum over p with exponent >= 2 of (exponent - 1) log p."""
        m = self.exponents >= 2
        return math.fsum(_log_terms(self.primes[m], self.exponents[m] - 1))

    def to_int(self) -> int:
        out = 1
        for p, k in zip(self.primes.tolist(), self.exponents.tolist()):
            out *= p**k
        return out


def _factorization(primes: np.ndarray, exps: np.ndarray) -> LcmFactorization:
    keep = exps > 0
    p, k = primes[keep].astype(np.int64), exps[keep].astype(np.int8)
    log_value = math.fsum(_log_terms(p, k))
    return LcmFactorization(p, k, log_value)


def _log_terms(p: np.ndarray, k: np.ndarray, step: int = 1 << 16) -> Iterator[float]:
    # streamed so fsum never holds millions of Python floats at once
    for i in range(0, p.size, step):
        yield from (np.log(p[i : i + step].astype(np.float64)) * k[i : i + step]).tolist()


def _prime_table(table: PrimeTable | None, limit: int) -> PrimeTable:
    if table is None or table.limit < limit:
        return PrimeTable(max(limit, 2))
    return table


def lcm_of_set(rs: RepresentedSet, table: PrimeTable | None = None) -> LcmFactorization:
    """Exponent of every prime in the LCM of the set.

    Primes up to sqrt(N) scan multiples of p^k for descending k, stopping at the
    first power with a member. Larger primes can only divide members once; for
    them the cofactor m = n / p < sqrt(N) is looped over instead.
    """
    if rs.count() == 0:
        raise EmptySet("LCM of an empty set")
    N = rs.limit
    table = _prime_table(table, N)
    root = math.isqrt(N)

    small = table.primes(2, root)
    small_exp = np.zeros(small.size, dtype=np.int8)
    powers = []
    for p in small.tolist():
        q, ks = p, []
        while q <= N:
            ks.append(q)
            q *= p
        powers.append(ks)
    for start in range(0, N + 1, BLOCK):
        end = min(start + BLOCK, N + 1)
        block = rs.dense(start, end)
        for i, ks in enumerate(powers):
            for k in range(len(ks), small_exp[i], -1):
                q = ks[k - 1]
                if block[(-start) % q :: q].any():
                    small_exp[i] = k
                    break

    parts_p, parts_k = [small], [small_exp]
    for chunk in table.chunks(root + 1, N):
        hit = np.zeros(chunk.size, dtype=bool)
        for m in range(1, N // int(chunk[0]) + 1):
            n = int(np.searchsorted(chunk, N // m, side="right"))
            todo = np.flatnonzero(~hit[:n])
            if todo.size:
                hit[todo[rs.contains_many(m * chunk[todo])]] = True
        parts_p.append(chunk)
        parts_k.append(hit.astype(np.int8))
    return _factorization(np.concatenate(parts_p), np.concatenate(parts_k))


def psi(
    F: QuadraticPolynomial,
    limit: int,
    mode: str | None = None,
    window_factor: float = DEFAULT_WINDOW_FACTOR,
    table: PrimeTable | None = None,
    threads: int = 1,
) -> float:
    rs = build_represented_set(F, limit, mode, window_factor, threads)
    if rs.count() == 0:
        return 0.0
    return lcm_of_set(rs, table).log_value


def lcm_log_exact_oracle(rs: RepresentedSet) -> float:
    """log LCM by folding big-integer lcm over the members (independent check)."""
    if rs.limit > 10**5:
        raise TooLarge("big-integer oracle is limited to N <= 10^5")
    members = rs.members().tolist()
    if not members:
        return 0.0
    return math.log(math.lcm(*members))


def fermat_psi_closed_form(limit: int, table: PrimeTable | None = None) -> tuple[LcmFactorization, float]:
    """psi for x^2 + y^2 from the classical description of sums of two squares.

    Exponents: 2 -> floor(log2 N); p = 3 mod 4 -> 2 max{k : p^k <= sqrt N};
    p = 1 mod 4 -> max{k : p^k <= N}.
    """
    from .primes import chebyshev, max_power_exponents

    if limit < 2:
        return _factorization(np.zeros(0, np.int64), np.zeros(0, np.int64)), 0.0
    table = _prime_table(table, limit)
    root = math.isqrt(limit)
    ps = table.primes(2, limit)
    exps = np.zeros(ps.size, dtype=np.int64)
    exps[0] = limit.bit_length() - 1
    r3 = (ps % 4 == 3) & (ps <= root)
    exps[r3] = 2 * max_power_exponents(ps[r3], root)
    r1 = ps % 4 == 1
    exps[r1] = max_power_exponents(ps[r1], limit)
    value = math.fsum(
        [
            (limit.bit_length() - 1) * math.log(2),
            2 * chebyshev(root, 4, 3, table=table).value,
            chebyshev(limit, 4, 1, table=table).value,
        ]
    )
    return _factorization(ps, exps), value


def count_sk(rs: RepresentedSet, table: PrimeTable | None, k: int) -> int:
    """#{p prime : k p <= N and k p in the set}."""
    if k < 1:
        raise ValueError("k must be positive")
    top = rs.limit // k
    table = _prime_table(table, top)
    return sum(int(rs.contains_many(k * p).sum()) for p in table.chunks(2, top))


def count_sk_pair(rs: RepresentedSet, table: PrimeTable | None, k1: int, k2: int) -> int:
    """#{p prime : k1 p <= N, both k1 p and k2 p in the set}, for k2 < k1."""
    if not 1 <= k2 < k1:
        raise BadOrder(f"need 1 <= k2 < k1, got k1={k1}, k2={k2}")
    top = rs.limit // k1
    table = _prime_table(table, top)
    total = 0
    for p in table.chunks(2, top):
        total += int((rs.contains_many(k1 * p) & rs.contains_many(k2 * p)).sum())
    return total


def psi_box(F: QuadraticPolynomial, limit: int, table: PrimeTable | None = None, threads: int = 1) -> float:
    """log LCM of the values 0 < F(x, y) <= N with |x|, |y| <= floor(sqrt N)."""
    rs = build_represented_set(F, limit, WINDOW, threads=threads, half_width=math.isqrt(limit))
    if rs.count() == 0:
        return 0.0
    return lcm_of_set(rs, table).log_value


def figure_one_series(
    limits: Iterable[int],
    table: PrimeTable | None = None,
    threads: int = 1,
    max_limit: int = FIGURE_ONE_CAP,
    rs: RepresentedSet | None = None,
) -> list[tuple[int, float]]:
    """R(N) = sum of log p over primes p <= N of the form x^2+y^2+1, divided by
    the number of n <= N of that form, for each N in ``limits``.

    The set is built once at the largest N; smaller N read prefixes of it.
    """
    limits = sorted(set(int(n) for n in limits))
    top = limits[-1]
    if top > max_limit:
        raise LimitTooLarge(f"N = {top} exceeds the cap {max_limit}")
    if rs is None or rs.limit < top or rs.poly != X2Y2_PLUS_1 or rs.approximate:
        rs = build_represented_set(X2Y2_PLUS_1, top, EXACT_DEFINITE, threads=threads)
    table = _prime_table(table, top)
    hits = [p[rs.contains_many(p)] for p in table.chunks(2, top)]
    hits = np.concatenate(hits) if hits else np.zeros(0, dtype=np.int64)
    # every term is >= log 2 > 1/2, so its ulp is at least 2^-53 and term * 2^53
    # is an exact integer; split in two, the prefix sums stay exact in int64 and
    # each R(N) is the correctly rounded sum whatever the grid
    scaled = (np.log(hits.astype(np.float64)) * 2.0**53).astype(np.int64)
    hi = np.cumsum(scaled >> 26)
    lo = np.cumsum(scaled & ((1 << 26) - 1))
    out = []
    for n, cut in zip(limits, np.searchsorted(hits, limits, side="right").tolist()):
        total = (int(hi[cut - 1]) << 26) + int(lo[cut - 1]) if cut else 0
        out.append((n, total / 2**53 / rs.count(n)))
    return out


def figure_one_ratio(
    limit: int,
    table: PrimeTable | None = None,
    threads: int = 1,
    max_limit: int = FIGURE_ONE_CAP,
    rs: RepresentedSet | None = None,
) -> float:
    return figure_one_series([limit], table, threads, max_limit, rs)[0][1]
