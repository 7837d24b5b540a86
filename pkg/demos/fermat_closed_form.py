"""
Sums of two squares: enumeration against the closed form
========================================================

For x^2 + y^2 the exponent of each prime in the LCM is known in advance:
2 gets floor(log2 N), primes 1 mod 4 get their largest power below N, and
primes 3 mod 4 only appear squared, so they get twice the largest power below
sqrt(N). We compare that prime by prime with the LCM computed from the set.
"""

import math

from quadlcm import build_represented_set, fermat_psi_closed_form, lcm_of_set
from quadlcm.primes import PrimeTable
from quadlcm.represent import X2Y2

for N in (10, 1000, 10**6, 10**7):
    table = PrimeTable(N)
    closed, value = fermat_psi_closed_form(N, table)
    enum = lcm_of_set(build_represented_set(X2Y2, N), table)
    print(f"N={N:>10,d}  maps agree: {closed == enum}  psi={value:.6f}  psi/(N/2)={value / (N / 2):.6f}")

###############################################################################
# A peek at the exponents at N = 1000

closed, _ = fermat_psi_closed_form(1000)
print({p: k for p, k in closed.as_dict().items() if p < 40})
print("log 2 * floor(log2 1000) =", 9 * math.log(2))
