"""
Constants behind the prime count in x^2 + y^2 + 1
=================================================

The Landau-Ramanujan constant L comes from a product over primes 3 mod 4,
which converges far too slowly to truncate. Rewriting it through zeta and the
mod-4 L-series at s = 2, 4, 8, ... gets double precision in four levels.
C_1 multiplies L by a fast product truncated at 10^7.
"""

import math

from quadlcm.constants import ck_factor, conjecture_c1, conjecture_cf, conjecture_ck, landau_ramanujan
from quadlcm.primes import small_primes

###############################################################################
# Tower depth against accuracy

for depth in range(1, 6):
    lr = landau_ramanujan(depth=depth)
    print(f"depth {depth}: L = {lr.value:.16f}  (bound {lr.error_estimate:.1e})")

# the direct product for comparison: only about six digits at P = 10^6
p = small_primes(10**6)
p = p[p % 4 == 3]
naive = 2**-0.5 * math.exp(-0.5 * sum(math.log1p(-1.0 / q**2) for q in p.tolist()))
print(f"direct product to 10^6: {naive:.16f}")

###############################################################################
# C_1 and its relatives

c1 = conjecture_c1()
print(f"C_1 = {c1.value:.10f}, C_1/L = {c1.value / landau_ramanujan().value:.10f}")
for k in range(1, 13):
    print(f"C_{k:<2d} = {conjecture_ck(k, c1).value:.6f}   C_k/C_1 = {ck_factor(k)}")

###############################################################################
# Averaging C_k over k <= K with weight 1/log K creeps toward L

for kmax in (10**2, 10**4, 10**6):
    print(kmax, conjecture_cf(kmax, c1).partial_average)
