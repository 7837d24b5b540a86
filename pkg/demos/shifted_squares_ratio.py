"""
The prime-weighted density of x^2 + y^2 + 1
============================================

R(N) sums log p over the primes p <= N that are one more than a sum of two
squares, and divides by how many n <= N have that shape. The ratio drifts
slowly downward; at N = 10^8 it sits near 0.8269.

Pass a limit on the command line to go further (10^8 takes about 15 s).
"""

import sys
import time

from quadlcm import build_represented_set
from quadlcm.cli import figure_one_grid
from quadlcm.primes import PrimeTable
from quadlcm.represent import EXACT_DEFINITE, X2Y2_PLUS_1, figure_one_series

limit = int(sys.argv[1]) if len(sys.argv) > 1 else 10**7

t0 = time.perf_counter()
rs = build_represented_set(X2Y2_PLUS_1, limit, EXACT_DEFINITE)
primes = PrimeTable(limit)
print(f"built set and sieve up to {limit:,} in {time.perf_counter() - t0:.1f} s")

###############################################################################
# Values along the usual 1, 2, ..., 9 times 10^k grid

for n, r in figure_one_series(figure_one_grid(limit), primes, rs=rs):
    if str(n)[0] in "125":
        print(f"{n:>12,d}  {r:.10f}")
