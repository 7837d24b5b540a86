"""
Sorting quadratics by how fast their LCM grows
==============================================

Each polynomial F = ax^2 + bxy + cy^2 + ex + fy + g falls into one growth
regime, decided by a few integer invariants. Below we classify a handful of
forms and, for the degenerate ones, show the one-variable polynomial hiding
inside.
"""

from quadlcm import QuadraticPolynomial, classify, invariants, reduce_to_univariate
from quadlcm.poly import ap_in_image, derivatives_dependent

forms = {
    "x^2 + y^2 + 1": QuadraticPolynomial(1, 0, 1, 0, 0, 1),
    "x^2 + y^2": QuadraticPolynomial(1, 0, 1, 0, 0, 0),
    "(x + y)^2 + 1": QuadraticPolynomial(1, 2, 1, 0, 0, 1),
    "x^2 - y^2 + x": QuadraticPolynomial(1, 0, -1, 1, 0, 0),
    "x^2 + xy + y^2 + x + y + 1": QuadraticPolynomial(1, 1, 1, 1, 1, 1),
}

###############################################################################
# The invariants first: discriminant, D, and the shift (alpha, beta)

for name, F in forms.items():
    d = invariants(F)
    print(f"{name:28s} Delta={d.delta:3d}  D={d.large_d:3d}  shift=({d.alpha},{d.beta})  {d.definiteness}")

###############################################################################
# Then the regime and the predicted order of psi_F(N)

for name, F in forms.items():
    rep = classify(F)
    print(f"{name:28s} {rep.regime:38s} psi ~ {rep.predicted_psi_order}")

###############################################################################
# When the two partial derivatives are proportional, F is a polynomial in a
# single linear form t = ux + vy

F = forms["(x + y)^2 + 1"]
assert derivatives_dependent(F)
uq = reduce_to_univariate(F)
print(f"t = {uq.u}x + {uq.v}y,  f(t) = {uq.s} t^2 + {uq.r} t + {uq.t0}")

###############################################################################
# A square discriminant means F takes every value of an arithmetic progression

ap = ap_in_image(forms["x^2 - y^2 + x"])
print("progression", ap.step, "t +", ap.offset)
for t in range(1, 6):
    x, y = ap.point(t)
    print(t, (x, y), forms["x^2 - y^2 + x"](x, y))
