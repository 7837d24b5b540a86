"""Bivariate integer quadratics F(x, y) = ax^2 + bxy + cy^2 + ex + fy + g:
invariants, regime classification and the constructive reductions used to
prove the degenerate cases (univariate reduction, arithmetic progressions in
the image, normalization to a polynomial that hits every residue class).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    CoefficientTooLarge,
    ConstantPolynomial,
    NotApplicable,
    NotDependent,
    NotNormalizable,
)

COEFF_CAP = 2**20

POSITIVE_DEFINITE = "positive-definite"
NEGATIVE_DEFINITE = "negative-definite"
INDEFINITE = "indefinite"
DEGENERATE = "degenerate-quadratic-part"

THM1_IRREDUCIBLE = "Theorem1-irreducible"
THM1_REDUCIBLE = "Theorem1-reducible"
THM2_SQUARE = "Theorem2-square-discriminant"
THM2_ZERO_D = "Theorem2-zero-large-discriminant"
THM3_GENERIC = "Theorem3-generic"
BOUNDED = "not-representing-arbitrarily-large"

REGIMES = (THM1_IRREDUCIBLE, THM1_REDUCIBLE, THM2_SQUARE, THM2_ZERO_D, THM3_GENERIC, BOUNDED)

ORDER_SQRT_LOG = "√N·logN"
ORDER_SQRT = "√N"
ORDER_LINEAR = "N"
ORDER_GENERIC = "N·loglogN/√logN"
ORDER_FINITE = "finite"


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


@dataclass(frozen=True)
class QuadraticPolynomial:
    a: int
    b: int
    c: int
    e: int
    f: int
    g: int

    def __post_init__(self):
        for name in "abcefg":
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                object.__setattr__(self, name, int(v))
            if abs(getattr(self, name)) > COEFF_CAP:
                raise CoefficientTooLarge(f"|{name}| exceeds 2^20")
        if not any((self.a, self.b, self.c, self.e, self.f)):
            raise ConstantPolynomial(f"F = {self.g} is constant")

    @classmethod
    def parse(cls, text: str) -> "QuadraticPolynomial":
        """Parse the ``a,b,c,e,f,g`` text format."""
        parts = text.split(",")
        if len(parts) != 6 or any(p != p.strip() or not p for p in parts):
            raise ValueError(f"expected six comma-separated integers, got {text!r}")
        return cls(*(int(p) for p in parts))

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.coefficients)

    @property
    def coefficients(self) -> tuple[int, int, int, int, int, int]:
        return (self.a, self.b, self.c, self.e, self.f, self.g)

    def __call__(self, x, y):
        # works for Python ints and numpy arrays alike
        return self.a * x * x + self.b * x * y + self.c * y * y + self.e * x + self.f * y + self.g

    def quadratic_part(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y

    def swapped(self) -> "QuadraticPolynomial":
        """F(y, x)."""
        return QuadraticPolynomial(self.c, self.b, self.a, self.f, self.e, self.g)

    @property
    def content(self) -> int:
        return math.gcd(*self.coefficients)

    def scaled_down(self, w: int) -> "QuadraticPolynomial":
        return QuadraticPolynomial(*(v // w for v in self.coefficients))


@dataclass(frozen=True)
class DiscriminantData:
    delta: int
    large_d: int
    alpha: int
    beta: int
    content: int
    definiteness: str
    delta_is_square: bool


def invariants(F: QuadraticPolynomial) -> DiscriminantData:
    a, b, c, e, f, g = F.coefficients
    delta = b * b - 4 * a * c
    large_d = a * f * f + c * e * e - b * f * e + delta * g
    if delta < 0:
        definiteness = POSITIVE_DEFINITE if a > 0 else NEGATIVE_DEFINITE
    elif delta > 0:
        definiteness = INDEFINITE
    else:
        definiteness = DEGENERATE
    return DiscriminantData(
        delta=delta,
        large_d=large_d,
        alpha=b * f - 2 * c * e,
        beta=b * e - 2 * a * f,
        content=F.content,
        definiteness=definiteness,
        delta_is_square=is_square(delta),
    )


def derivatives_dependent(F: QuadraticPolynomial) -> bool:
    """True iff dF/dx = 2ax+by+e and dF/dy = bx+2cy+f are linearly dependent.

    The 2x3 coefficient matrix [[2a, b, e], [b, 2c, f]] has rank < 2 exactly
    when its three 2x2 minors -delta, -alpha, beta all vanish.
    """
    d = invariants(F)
    return d.delta == 0 and d.alpha == 0 and d.beta == 0


@dataclass(frozen=True)
class UnivariateQuadratic:
    """f(t) = s t^2 + r t + t0 together with the substitution t = u x + v y.

    With gcd(u, v) = 1 the substitution is onto Z, so Im(F) = Im(f).
    The coefficients come out integral; they are stored as ``Fraction`` so that
    callers can treat the general rational case uniformly.
    """

    s: Fraction
    r: Fraction
    t0: Fraction
    u: int
    v: int

    def __call__(self, t):
        if isinstance(t, int):
            return self.s * t * t + self.r * t + self.t0
        s, r, t0 = int(self.s), int(self.r), int(self.t0)
        return s * t * t + r * t + t0

    @property
    def integral(self) -> bool:
        return all(q.denominator == 1 for q in (self.s, self.r, self.t0))

    def has_rational_root(self) -> bool:
        if self.s == 0:
            return self.r != 0 or self.t0 == 0
        disc = self.r * self.r - 4 * self.s * self.t0
        # denominators divide 4, so 16*disc is an integer
        return disc >= 0 and is_square(int(16 * disc))


def reduce_to_univariate(F: QuadraticPolynomial) -> UnivariateQuadratic:
    if not derivatives_dependent(F):
        raise NotDependent(f"derivatives of F = {F} are independent")
    a, b, c, e, f, g = F.coefficients
    if a == 0 and c == 0:
        # b = 0 too; F = e x + f y + g
        w = math.gcd(e, f)
        u, v, lam, s = e // w, f // w, w, 0
    else:
        s = math.gcd(a, c)
        if (a or c) < 0:
            s = -s
        u, v = math.isqrt(a // s), math.isqrt(c // s)
        if b * s < 0:
            v = -v
        lam = e // u if u else f // v
        assert (lam * u, lam * v) == (e, f) and 2 * s * u * v == b
    if u < 0 or (u == 0 and v < 0):
        u, v, lam = -u, -v, -lam
    return UnivariateQuadratic(Fraction(s), Fraction(lam), Fraction(g), u, v)


@dataclass(frozen=True)
class ClassificationReport:
    regime: str
    derivatives_dependent: bool
    predicted_psi_order: str
    evidence: dict = field(default_factory=dict)


def _bounded_above(F: QuadraticPolynomial, d: DiscriminantData, dependent: bool) -> bool:
    if d.definiteness == NEGATIVE_DEFINITE:
        return True
    if dependent:
        uq = reduce_to_univariate(F)
        return uq.s < 0 or (uq.s == 0 and uq.r == 0)
    return False


def classify(F: QuadraticPolynomial) -> ClassificationReport:
    d = invariants(F)
    dependent = derivatives_dependent(F)
    evidence = {
        "delta": d.delta,
        "D": d.large_d,
        "alpha": d.alpha,
        "beta": d.beta,
        "content": d.content,
        "definiteness": d.definiteness,
        "delta_is_square": d.delta_is_square,
    }
    if _bounded_above(F, d, dependent):
        regime, order = BOUNDED, ORDER_FINITE
    elif dependent:
        uq = reduce_to_univariate(F)
        evidence["univariate"] = (int(uq.s), int(uq.r), int(uq.t0))
        evidence["direction"] = (uq.u, uq.v)
        if uq.s == 0:
            # linear F: image is a full residue class
            regime, order = THM1_REDUCIBLE, ORDER_LINEAR
        elif uq.has_rational_root():
            regime, order = THM1_REDUCIBLE, ORDER_SQRT
        else:
            regime, order = THM1_IRREDUCIBLE, ORDER_SQRT_LOG
    elif d.delta_is_square:
        regime, order = THM2_SQUARE, ORDER_LINEAR
    elif d.large_d == 0:
        regime, order = THM2_ZERO_D, ORDER_LINEAR
    else:
        regime, order = THM3_GENERIC, ORDER_GENERIC
    return ClassificationReport(regime, dependent, order, evidence)


def is_class_h(F: QuadraticPolynomial) -> bool:
    """F represents, for every A != 0, an integer prime to A."""
    a, b, c, e, f, g = F.coefficients
    if F.content != 1:
        return False
    all_even = (a - e) % 2 == 0 and (c - f) % 2 == 0 and b % 2 == 0 and g % 2 == 0
    return not all_even


def normalize_to_h(F: QuadraticPolynomial) -> tuple[QuadraticPolynomial, int]:
    """Return (H, c_F) with H in class H.

    c_F = W when F/W is already in H (W the content); otherwise F/W only takes
    even values and H = (F/W)(2x, 2y) / 2 with c_F = 2W.
    """
    if derivatives_dependent(F):
        raise NotNormalizable("derivatives are dependent")
    d = invariants(F)
    if d.definiteness == NEGATIVE_DEFINITE:
        raise NotNormalizable("F is bounded above")
    w = F.content
    G = F.scaled_down(w)
    if is_class_h(G):
        return G, w
    a, b, c, e, f, g = G.coefficients
    H = QuadraticPolynomial(2 * a, 2 * b, 2 * c, e, f, g // 2)
    assert is_class_h(H)
    return H, 2 * w


@dataclass(frozen=True)
class ArithmeticProgression:
    """F(x0 + u t, y0 + v t) = step * t + offset for every integer t."""

    step: int
    offset: int
    direction: tuple[int, int]
    base: tuple[int, int]

    def point(self, t: int) -> tuple[int, int]:
        return (self.base[0] + self.direction[0] * t, self.base[1] + self.direction[1] * t)

    def __iter__(self):
        # unpacks as (A, B)
        return iter((self.step, self.offset))


def _isotropic_directions(F: QuadraticPolynomial, root: int) -> list[tuple[int, int]]:
    a, b, c = F.a, F.b, F.c
    if a != 0:
        if root == 0:
            return [(-b, 2 * a)]
        return [(b + root, -2 * a), (b - root, -2 * a)]
    if c != 0:
        if root == 0:
            return [(1, 0)]
        return [(-2 * c, b + root), (-2 * c, b - root)]
    return [(1, 0), (0, 1)]


def ap_in_image(F: QuadraticPolynomial) -> ArithmeticProgression:
    """An arithmetic progression A t + B (A != 0) contained in Im(F).

    Requires independent derivatives and a square discriminant. The line runs
    along a direction on which the quadratic part vanishes; the base point is
    moved off the origin only when the origin gives A = 0 (e.g. x^2 - y^2).
    """
    d = invariants(F)
    if derivatives_dependent(F) or not d.delta_is_square:
        raise NotApplicable("needs independent derivatives and a square discriminant")
    a, b, c, e, f, g = F.coefficients
    root = math.isqrt(d.delta)
    for u, v in _isotropic_directions(F, root):
        assert F.quadratic_part(u, v) == 0
        for x0, y0 in ((0, 0), (1, 0), (0, 1)):
            step = 2 * a * x0 * u + b * (x0 * v + y0 * u) + 2 * c * y0 * v + e * u + f * v
            if step != 0:
                return ArithmeticProgression(step, F(x0, y0), (u, v), (x0, y0))
    raise AssertionError(f"no progression found for {F}")  # unreachable for valid input
