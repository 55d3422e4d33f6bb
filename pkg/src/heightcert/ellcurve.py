"""Elliptic curves over Q with points over supported number fields.

A curve is an integral Weierstrass model

    y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6

with integer coefficients. Its points may live over any supported number
field L, and over the residue fields of L at primes of good reduction; the
same group law serves both, since FieldElement and ResidueElement share the
field operations.

Example usage:
    curve = EllipticCurve(0, 0, 0, 0, -2)
    point = curve.point(3, 5)
    print(2 * point)                      # (129/100, -383/1000)
    print(count_points(curve, 7))         # (number of points, a_7)
    print(frobenius_poly(curve, 5))       # X^2 - a_5 X + 5
"""

import functools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy

from heightcert.canonical import height_comparison_bound
from heightcert.errors import (
    BadPrimeError,
    BudgetExceededError,
    FieldMismatchError,
    HypothesisError,
    NoAdmissiblePrimeError,
    PointNotOnCurveError,
    RefutedStepError,
)
from heightcert.heights import ProjPoint
from heightcert.numfield import (
    RATIONALS,
    frobenius_element,
    is_ramified,
    make_field,
)
from heightcert.places import primes_above, reduce_element, valuation
from heightcert.polyfield import roots_in_field
from heightcert.progress import ProgressBar

logger = logging.getLogger(__name__)

# Rational j-invariants of curves with complex multiplication, mapped to the
# discriminant of the CM order
CM_J_INVARIANTS = {
    0: -3,
    1728: -4,
    -3375: -7,
    8000: -8,
    -32768: -11,
    54000: -12,
    287496: -16,
    -884736: -19,
    -12288000: -27,
    16581375: -28,
    -884736000: -43,
    -147197952000: -67,
    -262537412640768000: -163,
}


class EllipticCurve:
    """
    An elliptic curve over Q given by an integral Weierstrass model.

    Attributes:
        a1, a2, a3, a4, a6 (int):
            The Weierstrass coefficients.
        b2, b4, b6, b8 (int):
            The standard auxiliary invariants.
        c4, c6 (int):
            The invariants with 1728*disc = c4^3 - c6^2.
        discriminant (int):
            The discriminant of the model.
        j_invariant (Fraction):
            The j-invariant.
        bad_primes (tuple):
            The primes dividing the discriminant (the finite part of S).
        cm_discriminant (int):
            The discriminant of the CM order, None for curves without CM.
        label (str):
            An optional name used in reports.
    """

    def __init__(self, a1, a2, a3, a4, a6, cm_discriminant=None, label=None):
        """
        Initialise the curve.

        Args:
            a1, a2, a3, a4, a6 (int/Fraction):
                The coefficients; each must be an integer.
            cm_discriminant (int, optional):
                A declared CM discriminant. Recognised automatically for the
                rational CM j-invariants when omitted.
            label (str, optional):
                A name for reports.

        Raises:
            HypothesisError:
                If a coefficient is not integral or the model is singular.
        """
        coeffs = []
        for name, value in zip(("a1", "a2", "a3", "a4", "a6"),
                               (a1, a2, a3, a4, a6)):
            value = Fraction(value)
            if value.denominator != 1:
                raise HypothesisError(f"{name} = {value} is not integral")
            coeffs.append(int(value))
        self.a1, self.a2, self.a3, self.a4, self.a6 = coeffs
        a1, a2, a3, a4, a6 = coeffs

        self.b2 = a1 * a1 + 4 * a2
        self.b4 = 2 * a4 + a1 * a3
        self.b6 = a3 * a3 + 4 * a6
        self.b8 = (
            a1 * a1 * a6
            + 4 * a2 * a6
            - a1 * a3 * a4
            + a2 * a3 * a3
            - a4 * a4
        )
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        self.c4 = b2 * b2 - 24 * b4
        self.c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
        self.discriminant = (
            -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        )
        if self.discriminant == 0:
            raise HypothesisError("the Weierstrass model is singular")
        self.j_invariant = Fraction(self.c4**3, self.discriminant)
        self.bad_primes = tuple(sympy.primefactors(abs(self.discriminant)))

        if cm_discriminant is None and self.j_invariant.denominator == 1:
            cm_discriminant = CM_J_INVARIANTS.get(int(self.j_invariant))
        self.cm_discriminant = cm_discriminant
        self.label = label

    @property
    def a_invariants(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def is_cm(self):
        return self.cm_discriminant is not None

    def __eq__(self, other):
        return (
            isinstance(other, EllipticCurve)
            and self.a_invariants == other.a_invariants
        )

    def __hash__(self):
        return hash(self.a_invariants)

    def __repr__(self):
        return f"EllipticCurve{self.a_invariants}"

    def __str__(self):
        lhs = "y^2"
        if self.a1:
            lhs += f" + {self.a1}*x*y"
        if self.a3:
            lhs += f" + {self.a3}*y"
        rhs = "x^3"
        for coeff, mono in ((self.a2, "*x^2"), (self.a4, "*x"),
                            (self.a6, "")):
            if coeff:
                rhs += f" + {coeff}{mono}"
        return f"{lhs} = {rhs}".replace("+ -", "- ")

    def is_good(self, p):
        """Return True if p does not divide the discriminant."""
        return self.discriminant % p != 0

    def residual(self, x, y):
        """Return lhs - rhs of the Weierstrass equation at (x, y)."""
        return (
            y * y + self.a1 * x * y + self.a3 * y
            - (x * x * x + self.a2 * x * x + self.a4 * x + self.a6)
        )

    def zero(self, field=RATIONALS):
        """Return the identity O over a field."""
        return ECPoint(self, field, None, None)

    def point(self, x, y, field=None):
        """
        Build an affine point, checking the equation exactly.

        Args:
            x, y (int/Fraction/FieldElement/ResidueElement):
                The coordinates.
            field (NumberField/ResidueField, optional):
                The field of definition; inferred from the coordinates.

        Returns:
            ECPoint:
                The point.

        Raises:
            PointNotOnCurveError:
                If (x, y) is not on the curve.
        """
        if field is None:
            field = getattr(x, "field", None) or getattr(y, "field", None)
            field = field or RATIONALS
        x, y = field.element(x), field.element(y)
        residual = self.residual(x, y)
        if not residual == 0:
            raise PointNotOnCurveError(residual)
        return ECPoint(self, field, x, y)

    def two_torsion_cubic(self):
        """Return 4x^3 + b2*x^2 + 2*b4*x + b6, constant term first."""
        return [self.b6, 2 * self.b4, self.b2, 4]


class ECPoint:
    """
    A point of an elliptic curve over a number field or residue field.

    Attributes:
        curve (EllipticCurve):
            The curve.
        field (NumberField/ResidueField):
            The field of definition.
        x, y (FieldElement/ResidueElement):
            The affine coordinates, both None for the identity O.
    """

    __slots__ = ("curve", "field", "x", "y")

    def __init__(self, curve, field, x, y):
        self.curve = curve
        self.field = field
        self.x = x
        self.y = y

    def is_zero(self):
        return self.x is None

    def _check(self, other):
        if other.curve != self.curve:
            raise FieldMismatchError("points on different curves")
        if other.field != self.field:
            raise FieldMismatchError(
                f"points over {self.field} and {other.field}"
            )

    def __add__(self, other):
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        E = self.curve
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        if x1 == x2:
            if y1 + y2 + E.a1 * x2 + E.a3 == 0:
                return E.zero(self.field)
            denom = 2 * y1 + E.a1 * x1 + E.a3
            lam = (3 * x1 * x1 + 2 * E.a2 * x1 + E.a4 - E.a1 * y1) / denom
            nu = (-x1 * x1 * x1 + E.a4 * x1 + 2 * E.a6 - E.a3 * y1) / denom
        else:
            denom = x2 - x1
            lam = (y2 - y1) / denom
            nu = (y1 * x2 - y2 * x1) / denom
        x3 = lam * lam + E.a1 * lam - E.a2 - x1 - x2
        y3 = -(lam + E.a1) * x3 - nu - E.a3
        return ECPoint(E, self.field, x3, y3)

    def __neg__(self):
        if self.is_zero():
            return self
        E = self.curve
        return ECPoint(
            E, self.field, self.x, -self.y - E.a1 * self.x - E.a3
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (-self) * (-n)
        result = self.curve.zero(self.field)
        addend = self
        while n:
            if n & 1:
                result = result + addend
            addend = addend + addend
            n >>= 1
        return result

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ECPoint):
            return NotImplemented
        if self.curve != other.curve or self.field != other.field:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.curve, self.x, self.y))

    def conjugate(self, sigma):
        """Apply a Galois automorphism to the coordinates."""
        if sigma.field is not self.field:
            raise FieldMismatchError(
                f"automorphism of {sigma.field} applied to a point over "
                f"{self.field}"
            )
        if self.is_zero():
            return self
        return ECPoint(self.curve, self.field, sigma(self.x), sigma(self.y))

    def psi(self):
        """Return psi(P) = [1; x; y], with psi(O) = [0; 0; 1]."""
        field = self.field
        if self.is_zero():
            return ProjPoint([field.zero, field.zero, field.one])
        return ProjPoint([field.one, self.x, self.y])

    def x_point(self):
        """Return [1; x] in P^1, with [0; 1] for O."""
        field = self.field
        if self.is_zero():
            return ProjPoint([field.zero, field.one])
        return ProjPoint([field.one, self.x])

    def base_change(self, embedding):
        """Map the point along a field embedding K -> L."""
        if self.is_zero():
            return self.curve.zero(embedding.target)
        return ECPoint(
            self.curve,
            embedding.target,
            embedding(self.x),
            embedding(self.y),
        )

    def __str__(self):
        if self.is_zero():
            return "O"
        return f"({self.x}, {self.y})"

    def __repr__(self):
        return f"ECPoint({self}, over {self.field})"


def apply_poly(sigma, coeffs, point):
    """
    Apply the group ring element sum_j c_j sigma^j to a point.

    Args:
        sigma (GaloisElement):
            The automorphism.
        coeffs (list):
            Integer coefficients c_0, c_1, ...
        point (ECPoint):
            The point.

    Returns:
        ECPoint:
            sum_j c_j * sigma^j(P).
    """
    total = point.curve.zero(point.field)
    conjugate = point
    for c in coeffs:
        if c:
            total = total + conjugate * c
        conjugate = conjugate.conjugate(sigma)
    return total


def reduce_point(point, prime):
    """
    Reduce a point modulo a prime of good reduction.

    On an integral model a point with a coordinate of negative valuation
    rescales projectively to [0 : 1 : 0], so it reduces to O.

    Args:
        point (ECPoint):
            A point over the field of the prime.
        prime (PrimeIdeal):
            A prime not dividing the discriminant.

    Returns:
        ECPoint:
            The reduced point over the residue field.

    Raises:
        BadPrimeError:
            If the curve has (possibly) bad reduction at the prime.
    """
    curve = point.curve
    if not curve.is_good(prime.p):
        raise BadPrimeError(f"{prime.p} divides the discriminant of {curve}")
    if point.field is not prime.field:
        raise FieldMismatchError(
            f"point over {point.field}, prime of {prime.field}"
        )
    residue = prime.residue_field
    if point.is_zero():
        return curve.zero(residue)
    if valuation(point.x, prime) < 0 or valuation(point.y, prime) < 0:
        return curve.zero(residue)
    return ECPoint(
        curve,
        residue,
        reduce_element(point.x, prime),
        reduce_element(point.y, prime),
    )


def frobenius_map(point):
    """Apply the p-power Frobenius to a point over a residue field."""
    if point.is_zero():
        return point
    p = point.field.p
    return ECPoint(point.curve, point.field, point.x**p, point.y**p)


@functools.lru_cache(maxsize=4096)
def count_points(curve, p, budget=10**6):
    """
    Count the points of the reduction of a curve over F_p.

    Odd p use the completed square (2y + a1*x + a3)^2 = 4x^3 + b2*x^2 +
    2*b4*x + b6 with a numpy table of square counts; p = 2 enumerates.

    Args:
        curve (EllipticCurve):
            The curve.
        p (int):
            A prime of good reduction.
        budget (int):
            The largest prime enumerated.

    Returns:
        tuple:
            (N, a_p) with N = #E(F_p) and a_p = p + 1 - N.

    Raises:
        BadPrimeError:
            If p divides the discriminant.
        BudgetExceededError:
            If p exceeds the budget.
    """
    if not curve.is_good(p):
        raise BadPrimeError(f"{p} divides the discriminant of {curve}")
    if p > budget:
        raise BudgetExceededError(
            f"p = {p} exceeds the point counting budget {budget}; "
            "use diagnostic mode with a smaller prime"
        )
    if p == 2:
        count = 1
        for x in range(2):
            for y in range(2):
                if curve.residual(x, y) % 2 == 0:
                    count += 1
    else:
        values = np.arange(p, dtype=np.int64)
        squares = np.bincount(values * values % p, minlength=p)
        x2 = values * values % p
        x3 = x2 * values % p
        rhs = (
            4 * x3 + (curve.b2 % p) * x2 + (2 * curve.b4 % p) * values
            + curve.b6 % p
        ) % p
        count = 1 + int(squares[rhs].sum())
    return count, p + 1 - count


def count_points_extension(a_p, p, f):
    """
    Return #E(F_{p^f}) from a_p by the trace recurrence.

    s_0 = 2, s_1 = a_p, s_k = a_p*s_{k-1} - p*s_{k-2} and the count is
    p^f + 1 - s_f.
    """
    previous, current = 2, a_p
    for _ in range(f - 1):
        previous, current = current, a_p * current - p * previous
    if f == 0:
        current = 2
    return p**f + 1 - current


@dataclass(frozen=True)
class FrobeniusData:
    """
    The characteristic polynomial of Frobenius X^2 - a_p X + p.

    Attributes:
        p (int):
            The prime.
        a_p (int):
            The trace of Frobenius.
    """

    p: int
    a_p: int

    @property
    def coefficients(self):
        """[a_0, a_1, a_2] = [p, -a_p, 1]."""
        return (self.p, -self.a_p, 1)

    def __call__(self, value):
        return value * value - self.a_p * value + self.p

    def __str__(self):
        terms = "X^2"
        if self.a_p:
            sign = "-" if self.a_p > 0 else "+"
            magnitude = abs(self.a_p)
            terms += f" {sign} {'' if magnitude == 1 else magnitude}X"
        return f"{terms} + {self.p}"


def frobenius_poly(curve, p, budget=10**6):
    """
    Return the characteristic polynomial of Frobenius at a good prime.

    Raises:
        RefutedStepError:
            If the Hasse bound or the coefficient bound fails.
    """
    _, a_p = count_points(curve, p, budget)
    data = FrobeniusData(p, a_p)
    if a_p * a_p > 4 * p or any(abs(c) > 4 * p for c in data.coefficients):
        raise RefutedStepError(f"Hasse bound violated: a_{p} = {a_p}")
    return data


def resultant_with_cyclotomic(frobenius, m):
    """
    Return Res(X^2 - a_p X + p, X^m - 1) exactly.

    The resultant is prod over m-th roots of unity z of Phi(z); it is never
    zero because the roots of Phi have absolute value sqrt(p).
    """
    X = sympy.Symbol("X")
    value = int(
        sympy.resultant(
            X**2 - frobenius.a_p * X + frobenius.p, X**m - 1, X
        )
    )
    if value == 0:
        raise RefutedStepError(f"Res(Phi_{frobenius.p}, X^{m} - 1) = 0")
    return value


def is_ordinary(curve, p, budget=10**6):
    """Return True if a_p is not divisible by p."""
    _, a_p = count_points(curve, p, budget)
    return a_p % p != 0


def _check_unramified_good(point, p):
    field = point.field
    if not point.curve.is_good(p):
        raise BadPrimeError(f"{p} divides the discriminant of {point.curve}")
    return frobenius_element(field, p)


def frobenius_combination(point, p, budget=10**6):
    """
    Return Phi_p(sigma)P = [p]P - [a_p]sigma(P) + sigma^2(P) exactly.

    Args:
        point (ECPoint):
            A point over L.
        p (int):
            A good prime unramified in L.
        budget (int):
            The point counting budget.

    Returns:
        tuple:
            (Q, sigma, frobenius_data).
    """
    sigma = _check_unramified_good(point, p)
    data = frobenius_poly(point.curve, p, budget)
    return apply_poly(sigma, data.coefficients, point), sigma, data


def reduced_frobenius_combination(point, prime, a_p):
    """
    Return the reduction of Phi_p(sigma)P computed in the residue field.

    Frobenius acts on the residue field as the p-power map, so the
    combination is [p]P~ - [a_p]Frob(P~) + Frob^2(P~).
    """
    reduced = reduce_point(point, prime)
    once = frobenius_map(reduced)
    twice = frobenius_map(once)
    return reduced * prime.p - once * a_p + twice


def frobenius_annihilates(point, p, prime, budget=10**6, exact_limit=100):
    """
    Check that Phi_p(sigma)P reduces to O modulo a prime above p.

    For p up to exact_limit the combination is formed exactly in E(L) and
    then reduced; above it the combination is formed in the residue field.

    Returns:
        bool:
            True when the reduction is the identity.
    """
    if prime.p != p:
        raise HypothesisError(f"{prime!r} does not lie above {p}")
    if p <= exact_limit:
        combination, _, _ = frobenius_combination(point, p, budget)
        return reduce_point(combination, prime).is_zero()
    _check_unramified_good(point, p)
    data = frobenius_poly(point.curve, p, budget)
    return reduced_frobenius_combination(point, prime, data.a_p).is_zero()


def torsion_test(point, p, budget=10**6):
    """
    Decide torsion through the Frobenius combination at p.

    Args:
        point (ECPoint):
            A point over L.
        p (int):
            A good prime unramified in L.
        budget (int):
            The point counting budget.

    Returns:
        tuple:
            (True, r) with [r]P = O when Phi_p(sigma)P = O, otherwise
            (False, Phi_p(sigma)P).

    Raises:
        RefutedStepError:
            If Phi_p(sigma)P = O but [r]P != O.
    """
    combination, sigma, data = frobenius_combination(point, p, budget)
    if not combination.is_zero():
        return False, combination
    r = resultant_with_cyclotomic(data, sigma.order())
    if not (point * r).is_zero():
        raise RefutedStepError(
            f"Phi_{p}(sigma)P = O but [{r}]P != O for P = {point}"
        )
    return True, r


def division_polynomial(curve, n):
    """
    Return the x-only division polynomial f_n as a sympy Poly over ZZ.

    psi_n = f_n for odd n and psi_n = psi_2 f_n for even n, where
    psi_2^2 = 4x^3 + b2*x^2 + 2*b4*x + b6. The non-zero n-torsion points
    have x among the roots of f_n, together with the roots of psi_2^2 when
    n is even.
    """
    if n < 0:
        raise ValueError("division polynomials need n >= 0")
    return _division_polynomials(curve)(n)


@functools.lru_cache(maxsize=64)
def _division_polynomials(curve):
    x = sympy.Symbol("x")
    b2, b4, b6, b8 = curve.b2, curve.b4, curve.b6, curve.b8
    two = sympy.Poly(4 * x**3 + b2 * x**2 + 2 * b4 * x + b6, x)
    two_sq = two * two
    base = {
        0: sympy.Poly(0, x),
        1: sympy.Poly(1, x),
        2: sympy.Poly(1, x),
        3: sympy.Poly(
            3 * x**4 + b2 * x**3 + 3 * b4 * x**2 + 3 * b6 * x + b8, x
        ),
        4: sympy.Poly(
            2 * x**6
            + b2 * x**5
            + 5 * b4 * x**4
            + 10 * b6 * x**3
            + 10 * b8 * x**2
            + (b2 * b8 - b4 * b6) * x
            + (b4 * b8 - b6 * b6),
            x,
        ),
    }

    @functools.lru_cache(maxsize=None)
    def f(n):
        if n in base:
            return base[n]
        m = n // 2
        if n % 2:
            if m % 2 == 0:
                return two_sq * f(m + 2) * f(m) ** 3 - f(m - 1) * f(
                    m + 1
                ) ** 3
            return f(m + 2) * f(m) ** 3 - two_sq * f(m - 1) * f(m + 1) ** 3
        return f(m) * (
            f(m + 2) * f(m - 1) ** 2 - f(m - 2) * f(m + 1) ** 2
        )

    return f


def _poly_field_coeffs(poly, field):
    """Return a sympy Poly's coefficients (constant first) in a field."""
    return [
        field.element(Fraction(int(c.p), int(c.q)))
        for c in reversed(poly.all_coeffs())
    ]


def torsion_x_polynomial(curve, n):
    """Return a polynomial whose roots contain x(T) for T in E[n] - O."""
    poly = division_polynomial(curve, n)
    if n % 2 == 0:
        x = poly.gens[0]
        poly = poly * sympy.Poly(
            4 * x**3 + curve.b2 * x**2 + 2 * curve.b4 * x + curve.b6, x
        )
    return poly


def points_with_x(curve, x0):
    """Return the points of the curve over x0's field with x-coordinate x0."""
    field = x0.field
    linear = curve.a1 * x0 + curve.a3
    constant = -(x0 * x0 * x0 + curve.a2 * x0 * x0 + curve.a4 * x0 + curve.a6)
    roots = roots_in_field([constant, linear, field.one], field)
    return [ECPoint(curve, field, x0, y0) for y0 in roots]


def torsion_points(curve, field, n, root_budget=None):
    """
    Return the points of E(L)[n], identity first.

    Args:
        curve (EllipticCurve):
            The curve.
        field (NumberField):
            The field L.
        n (int):
            The torsion order (n >= 1).
        root_budget (int, optional):
            The largest deg(f_n)*[L:Q] searched.

    Raises:
        BudgetExceededError:
            If the search exceeds the budget.
    """
    poly = torsion_x_polynomial(curve, n)
    if root_budget is not None and poly.degree() * field.degree > root_budget:
        raise BudgetExceededError(
            f"division polynomial search of degree {poly.degree()} over "
            f"{field} exceeds the budget {root_budget}"
        )
    points = [curve.zero(field)]
    if n == 1:
        return points
    for x0 in roots_in_field(_poly_field_coeffs(poly, field), field):
        for candidate in points_with_x(curve, x0):
            if (candidate * n).is_zero():
                points.append(candidate)
    return points


def p_torsion_trivial(curve, field, p, root_budget=240, budget=10**6,
                      sieve_primes=30):
    """
    Decide whether E(L)[p] = 0.

    A prime l != p of good reduction with residue degree f in L such that
    p does not divide #E(F_{l^f}) proves triviality, since prime-to-l
    torsion injects into the reduction. Otherwise the p-division points are
    searched directly.

    Returns:
        tuple:
            (trivial, evidence) with evidence a JSON-compatible dict.
    """
    tried = 0
    for ell in sympy.primerange(2, 10**4):
        if ell == p or not curve.is_good(ell):
            continue
        f = primes_above(field, ell)[0].f
        _, a_ell = count_points(curve, ell, budget)
        order = count_points_extension(a_ell, ell, f)
        if order % p:
            return True, {"method": "sieve", "ell": ell, "f": f,
                          "count": order}
        tried += 1
        if tried >= sieve_primes:
            break
    logger.info("reduction sieve inconclusive for E(%s)[%d]", field, p)
    points = torsion_points(curve, field, p, root_budget)
    evidence = {"method": "division-polynomial",
                "points": [str(P) for P in points[1:]]}
    return len(points) == 1, evidence


def twist_points(curve, d, bound=10, denominators=3):
    """
    Find points (x0, (-a1*x0 - a3 + t*sqrt(d))/2) of E over Q(sqrt d).

    These come from rational points of the quadratic twist:
    d*t^2 = 4x0^3 + b2*x0^2 + 2*b4*x0 + b6 with t != 0.

    Args:
        curve (EllipticCurve):
            The curve.
        d (int):
            A squarefree integer other than 0 and 1.
        bound (int):
            The largest |numerator| of x0 searched.
        denominators (int):
            x0 ranges over a/k^2 with 1 <= k <= denominators.

    Returns:
        list:
            ECPoint objects over Q(sqrt d), sorted by x0 and without
            duplicates.
    """
    field = make_field("quadratic", d)
    sqrt_d = field.gen if field.minpoly[1] == 0 else 2 * field.gen - 1
    cubic = curve.two_torsion_cubic()
    found = {}
    for k in range(1, denominators + 1):
        for a in range(-bound, bound + 1):
            x0 = Fraction(a, k * k)
            if x0 in found:
                continue
            value = sum(c * x0**i for i, c in enumerate(cubic)) / d
            if value <= 0:
                continue
            num = math.isqrt(value.numerator)
            den = math.isqrt(value.denominator)
            if num * num != value.numerator or den * den != value.denominator:
                continue
            t = Fraction(num, den)
            y0 = (sqrt_d * t - (curve.a1 * x0 + curve.a3)) * Fraction(1, 2)
            found[x0] = curve.point(field.element(x0), y0, field)
    return [found[x0] for x0 in sorted(found)]


def select_good_prime(curve, field, mode="diagnostic", start=2,
                      budget=10**6, root_budget=240, precision=80,
                      progress=False):
    """
    Return the smallest admissible prime p >= start for a curve over L.

    A prime is admissible when it is good for the model, unramified in L,
    larger than exp(B + 1) in theorem mode, and either E(L)[p] = 0 or the
    curve has CM and ordinary reduction at p.

    Args:
        curve (EllipticCurve):
            The curve.
        field (NumberField):
            The field L.
        mode (str):
            "diagnostic" or "theorem".
        start (int):
            The smallest prime considered.
        budget (int):
            The largest prime considered (the point counting budget).
        root_budget (int):
            The division polynomial search budget.
        precision (int):
            The precision used for B.
        progress (bool):
            Show a progress bar.

    Returns:
        tuple:
            (p, report) with report a JSON-compatible dict recording every
            condition.

    Raises:
        BudgetExceededError:
            If theorem mode needs a prime beyond the budget.
        NoAdmissiblePrimeError:
            If no prime up to the budget qualifies.
    """
    report = {"mode": mode, "start": start, "rejected": {}}
    lowest = max(start, 2)
    if mode == "theorem":
        bound = height_comparison_bound(curve, precision)
        ctx = bound.B.ctx
        threshold = ctx.exp(bound.B + 1)
        report["B"] = str(bound.B)
        report["threshold"] = ctx.nstr(threshold, 12)
        lowest = max(lowest, math.floor(float(threshold.b)) + 1)
        if lowest > budget:
            raise BudgetExceededError(
                f"theorem mode needs p > {report['threshold']}, beyond the "
                f"counting budget {budget}; use diagnostic mode"
            )

    rejected = report["rejected"]
    upper = min(budget, 10**7)
    # Progress counts integers scanned so the primes stay lazy
    position = lowest
    with ProgressBar(
        upper - lowest + 1, "good prime", enabled=progress
    ) as bar:
        for p in sympy.primerange(lowest, upper + 1):
            bar.advance(p + 1 - position)
            position = p + 1
            if not curve.is_good(p):
                rejected[p] = "bad reduction"
                continue
            if is_ramified(field, p):
                rejected[p] = "ramified in L"
                continue
            if curve.is_cm and is_ordinary(curve, p, budget):
                report.update(p=p, condition="ordinary CM",
                              a_p=count_points(curve, p, budget)[1])
                break
            try:
                trivial, evidence = p_torsion_trivial(
                    curve, field, p, root_budget, budget
                )
            except BudgetExceededError:
                rejected[p] = "p-torsion search over budget"
                continue
            if trivial:
                report.update(p=p, condition="E(L)[p] = 0",
                              evidence=evidence)
                break
            rejected[p] = "non-trivial p-torsion"
        else:
            raise NoAdmissiblePrimeError(
                f"no admissible prime in [{lowest}, {budget}] for {curve} "
                f"over {field}"
            )

    # Rejections are reported by count once the list gets long
    if len(rejected) > 20:
        report["rejected"] = {"count": len(rejected)}
    else:
        report["rejected"] = {str(k): v for k, v in rejected.items()}
    logger.info("selected p = %d for %s over %s (%s)", report["p"], curve,
                field, report["condition"])
    return report["p"], report
