"""LCM of the values of bivariate integer quadratics, computed at desk scale."""
from .constants import (
    conjecture_c1,
    conjecture_cf,
    conjecture_ck,
    landau_ramanujan,
    random_model_prediction,
    sieve_factor_product,
    simulate_random_set,
)
from .poly import (
    QuadraticPolynomial,
    ap_in_image,
    classify,
    derivatives_dependent,
    invariants,
    is_class_h,
    normalize_to_h,
    reduce_to_univariate,
)
from .primes import PrimeTable, chebyshev, kronecker, sieve_primes
from .represent import (
    RepresentedSet,
    build_represented_set,
    count_sk,
    count_sk_pair,
    delta,
    fermat_psi_closed_form,
    figure_one_ratio,
    lcm_log_exact_oracle,
    lcm_of_set,
    psi,
    psi_box,
)

__version__ = "0.1.0"
