"""
LCM of a random set
===================

Take each n <= N independently with probability delta. The log of the LCM
then tracks N delta log(1/delta) / (1 - delta). The draws come from SplitMix64
with an explicit seed, so every run below is reproducible.
"""

from quadlcm import random_model_prediction, simulate_random_set
from quadlcm.primes import PrimeTable

table = PrimeTable(10**5)

###############################################################################
# Five seeds at a few densities

for delta in (0.5, 0.1, 0.02, 0.005):
    ratios = []
    for seed in range(5):
        out = simulate_random_set(10**5, delta, seed, table)
        ratios.append(out.psi_value / out.predicted_value)
    print(f"delta={delta:<6} prediction={random_model_prediction(10**5, delta):10.1f}  "
          f"ratios " + " ".join(f"{r:.3f}" for r in ratios))
