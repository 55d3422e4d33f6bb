"""Places of the supported number fields and their absolute values.

Finite places come from Dedekind's factorisation of the minimal polynomial
modulo p, which is exact here because every supported ring of integers is
monogenic: a prime P above p is (p, G(w)) for a lift G of an irreducible
factor g of the minimal polynomial mod p, with ramification index the
multiplicity of g and residue degree deg g. Valuations are computed exactly
with an anti-uniformiser gamma, an integral element with v_P(gamma) = e - 1
that is divisible by p at every other prime above p: alpha lies in P if and
only if alpha*gamma/p is integral.

Archimedean places are the complex embeddings up to conjugation, evaluated
with interval arithmetic from a closed form of the image of w.

Example usage:
    field = make_field("quadratic", -1)
    above_two = primes_above(field, 2)[0]
    print(above_two.e, above_two.f)                     # 2 1
    print(valuation(field.element(2), above_two))       # 2
    print(ideal_norm_of_generators([field.gen + 1]))    # 2
"""

import functools
import logging
import math
from fractions import Fraction

import sympy
from sympy.matrices.normalforms import hermite_normal_form

from heightcert.errors import HypothesisError, ReductionPoleError
from heightcert.intervals import interval_context, to_interval
from heightcert.numfield import FieldElement, factor_mod_p
from heightcert.residue import ResidueField

logger = logging.getLogger(__name__)


class PrimeIdeal:
    """
    A prime ideal of the ring of integers Z[w].

    Attributes:
        field (NumberField):
            The field.
        p (int):
            The rational prime below.
        e (int):
            The ramification index.
        f (int):
            The residue degree.
        factor (tuple):
            The irreducible factor of the minimal polynomial mod p defining
            the prime, monic, leading coefficient first.
        index (int):
            The position in the canonical ordering of the primes above p.
        generator (FieldElement):
            The lift G(w) with 0 <= coefficients < p; P = (p, G(w)).
        gamma (FieldElement):
            The anti-uniformiser described in the module docstring.
        residue_field (ResidueField):
            O_K / P as F_p[t]/(factor).
        root (int):
            For residue degree one, the image of w in F_p; otherwise None.
    """

    def __init__(self, field, p, factors, index):
        """
        Build the prime attached to one factor of the minimal polynomial.

        Args:
            field (NumberField):
                The field.
            p (int):
                The rational prime.
            factors (list):
                All (factor, multiplicity) pairs from factor_mod_p.
            index (int):
                Which factor defines this prime.
        """
        self.field = field
        self.p = p
        self.index = index
        factor, self.e = factors[index]
        self.factor = tuple(factor)
        self.f = len(factor) - 1
        self.generator = _lift(field, factor)
        self.residue_field = ResidueField(p, self.factor)
        self.root = (-self.factor[1]) % p if self.f == 1 else None

        # Anti-uniformiser: the other factors to their full multiplicity
        gamma = field.one
        for j, (other, mult) in enumerate(factors):
            power = mult if j != index else mult - 1
            if power:
                gamma = gamma * _lift(field, other) ** power
        self.gamma = gamma

    @property
    def norm(self):
        """The absolute norm q = p^f."""
        return self.p**self.f

    @property
    def local_degree(self):
        """The local degree [K_P : Q_p] = e*f."""
        return self.e * self.f

    def __eq__(self, other):
        return (
            isinstance(other, PrimeIdeal)
            and self.field is other.field
            and self.p == other.p
            and self.factor == other.factor
        )

    def __hash__(self):
        return hash((self.field.kind, self.field.parameter, self.p,
                     self.factor))

    def __repr__(self):
        return (
            f"PrimeIdeal({self.field}, p={self.p}, e={self.e}, f={self.f}, "
            f"#{self.index})"
        )

    def __str__(self):
        return f"({self.p}, {self.generator})"

    def sort_key(self):
        """Canonical ordering key: (p, root or factor coefficients)."""
        return (self.p, self.factor)


def _lift(field, factor):
    """Lift a factor (leading coefficient first) to the element G(w)."""
    coeffs = list(reversed(factor))
    return field.polynomial_value(coeffs, field.gen)


@functools.lru_cache(maxsize=None)
def primes_above(field, p):
    """
    List the primes of a field above a rational prime.

    Args:
        field (NumberField):
            The field.
        p (int):
            A rational prime.

    Returns:
        list:
            The PrimeIdeal objects in canonical order.

    Raises:
        HypothesisError:
            If p is not prime.
    """
    if not sympy.isprime(p):
        raise HypothesisError(f"{p} is not a prime")
    factors = factor_mod_p(field.minpoly, p)
    primes = [PrimeIdeal(field, p, factors, i) for i in range(len(factors))]
    logger.debug(
        "%s: %d prime(s) above %d, (e, f) = %s",
        field,
        len(primes),
        p,
        [(q.e, q.f) for q in primes],
    )
    return tuple(sorted(primes, key=PrimeIdeal.sort_key))


def _integral_valuation(num, prime):
    """Valuation of the integral element with coordinates num (not zero)."""
    field, p = prime.field, prime.p
    count = 0
    current = FieldElement(field, num)
    while True:
        shifted = current * prime.gamma
        if any(c % p for c in shifted.num):
            return count
        current = FieldElement(field, tuple(c // p for c in shifted.num))
        count += 1


def valuation(alpha, prime):
    """
    Return the normalised valuation v_P(alpha).

    Args:
        alpha (FieldElement/int/Fraction):
            The element, over the field of the prime.
        prime (PrimeIdeal):
            The prime.

    Returns:
        int/float:
            The valuation, math.inf for zero.
    """
    alpha = prime.field.element(alpha)
    if alpha.is_zero():
        return math.inf
    e, p = prime.e, prime.p
    if alpha.is_rational():
        value = alpha.rational()
        return e * (
            sympy.multiplicity(p, abs(value.numerator))
            - sympy.multiplicity(p, value.denominator)
        )
    return _integral_valuation(alpha.num, prime) - e * sympy.multiplicity(
        p, alpha.den
    )


def reduce_element(alpha, prime):
    """
    Reduce an element with non-negative valuation into the residue field.

    A denominator divisible by p is cleared by multiplying numerator and
    denominator with a power of gamma/p, which leaves both integral and the
    denominator a unit at the prime.

    Args:
        alpha (FieldElement/int/Fraction):
            The element.
        prime (PrimeIdeal):
            The prime.

    Returns:
        ResidueElement:
            The image in O_K / P.

    Raises:
        ReductionPoleError:
            If v_P(alpha) < 0.
    """
    field, p = prime.field, prime.p
    alpha = field.element(alpha)
    t = sympy.multiplicity(p, alpha.den)
    numerator = FieldElement(field, alpha.num)
    denominator = field.element(alpha.den)
    if t:
        lift = (prime.gamma * Fraction(1, p)) ** (prime.e * t)
        numerator = numerator * lift
        denominator = denominator * lift
        if not numerator.is_integral():
            raise ReductionPoleError(
                f"{alpha} has negative valuation at {prime!r}"
            )
    top = _reduce_integral(numerator, prime)
    bottom = _reduce_integral(denominator, prime)
    if bottom.is_zero():
        raise ReductionPoleError(
            f"{alpha} has negative valuation at {prime!r}"
        )
    return top / bottom


def _reduce_integral(alpha, prime):
    """Reduce an integral element via the power basis of w."""
    return prime.residue_field.element(list(reversed(alpha.num)))


def ideal_norm_of_generators(elements):
    """
    Return the absolute norm of the ideal generated by integral elements.

    The ideal is the Z-lattice spanned by the products g*w^j, and its norm
    is the index of that lattice in Z[w], read off a Hermite normal form.

    Args:
        elements (list):
            Integral FieldElement objects, not all zero.

    Returns:
        int:
            The norm of the ideal.

    Raises:
        HypothesisError:
            If every element is zero or one is not integral.
    """
    elements = [e for e in elements if not e.is_zero()]
    if not elements:
        raise HypothesisError("the zero ideal has no norm")
    field = elements[0].field
    if any(not e.is_integral() for e in elements):
        raise HypothesisError("ideal generators must be integral")
    if field.degree == 1:
        return math.gcd(*(e.num[0] for e in elements))

    columns = []
    power = field.one
    powers = []
    for _ in range(field.degree):
        powers.append(power)
        power = power * field.gen
    for element in elements:
        for w_power in powers:
            columns.append((element * w_power).num)

    # The norm of any generator is a multiple of the ideal norm
    modulus = min(abs(e.norm()) for e in elements)
    matrix = sympy.Matrix(columns).T
    hnf = hermite_normal_form(matrix, D=int(modulus))
    return abs(int(hnf.det()))


class Place:
    """
    A place of a supported number field.

    Attributes:
        field (NumberField):
            The field.
        kind (str):
            "archimedean" or "finite".
        index (int):
            The canonical position among places of the same kind (and, for
            finite places, the same p).
        is_real (bool):
            Archimedean only: whether the embedding is real.
        exponent (Fraction):
            Archimedean only: the image of w is exp(2*pi*i*exponent) for
            cyclotomic fields, otherwise None.
        sign (int):
            Archimedean only, quadratic fields: which square root of d.
        prime (PrimeIdeal):
            Finite only: the prime ideal.
        local_degree (int):
            [K_v : Q_v].
        weight (Fraction):
            The normalised local degree n_v = [K_v : Q_v] / [K : Q].
    """

    def __init__(self, field, kind, index, local_degree, is_real=None,
                 exponent=None, sign=None, prime=None):
        self.field = field
        self.kind = kind
        self.index = index
        self.local_degree = local_degree
        self.weight = Fraction(local_degree, field.degree)
        self.is_real = is_real
        self.exponent = exponent
        self.sign = sign
        self.prime = prime

    @property
    def is_finite(self):
        return self.kind == "finite"

    @property
    def p(self):
        """The residue characteristic of a finite place."""
        return self.prime.p if self.prime else None

    @property
    def residue_size(self):
        """The size q of the residue field of a finite place."""
        return self.prime.norm if self.prime else None

    def __eq__(self, other):
        return (
            isinstance(other, Place)
            and self.field is other.field
            and self.kind == other.kind
            and self.index == other.index
            and self.prime == other.prime
        )

    def __hash__(self):
        return hash((self.kind, self.index, self.prime))

    def __repr__(self):
        if self.is_finite:
            return f"Place({self.prime!r})"
        flavour = "real" if self.is_real else "complex"
        return f"Place({self.field}, infinite #{self.index}, {flavour})"

    def __str__(self):
        if self.is_finite:
            prime = self.prime
            return f"v|{prime.p} #{prime.index} (e={prime.e}, f={prime.f})"
        flavour = "real" if self.is_real else "complex"
        return f"v|inf #{self.index} ({flavour})"

    # Archimedean evaluation

    def theta(self, ctx):
        """Enclose the image of w under this embedding."""
        field = self.field
        if field.kind == "rationals":
            return ctx.mpf(0)
        if field.kind == "quadratic":
            d = field.parameter
            root = ctx.sqrt(ctx.mpf(abs(d)))
            if d > 0:
                root = root * self.sign
                if field.minpoly[1] == 0:
                    return root
                return (1 + root) / 2
            imag = root * self.sign
            if field.minpoly[1] == 0:
                return ctx.mpc(0, imag)
            return ctx.mpc(ctx.mpf(1) / 2, imag / 2)
        angle = 2 * ctx.pi * to_interval(ctx, self.exponent)
        return ctx.mpc(ctx.cos(angle), ctx.sin(angle))

    def embed(self, alpha, ctx):
        """
        Enclose the image of an element under this embedding.

        Args:
            alpha (FieldElement):
                The element.
            ctx (MPIntervalContext):
                The interval context.

        Returns:
            ivmpf/ivmpc:
                The enclosure, real for real places.
        """
        alpha = self.field.element(alpha)
        theta = self.theta(ctx)
        total = ctx.mpf(0)
        for c in reversed(alpha.num):
            total = total * theta + c
        return total / alpha.den


def archimedean_places(field):
    """
    List the archimedean places, real embeddings first.

    Args:
        field (NumberField):
            The field.

    Returns:
        tuple:
            The Place objects.
    """
    return _archimedean_places(field)


@functools.lru_cache(maxsize=None)
def _archimedean_places(field):
    if field.kind == "rationals":
        return (Place(field, "archimedean", 0, 1, is_real=True),)
    if field.kind == "quadratic":
        if field.parameter > 0:
            return tuple(
                Place(field, "archimedean", i, 1, is_real=True, sign=sign)
                for i, sign in enumerate((1, -1))
            )
        return (Place(field, "archimedean", 0, 2, is_real=False, sign=1),)
    m = field.parameter
    exponents = [c for c in range(1, m) if math.gcd(c, m) == 1 and 2 * c < m]
    return tuple(
        Place(
            field,
            "archimedean",
            i,
            2,
            is_real=False,
            exponent=Fraction(c, m),
        )
        for i, c in enumerate(exponents)
    )


def finite_places(field, p):
    """Return the finite places above p in canonical order."""
    return tuple(
        Place(field, "finite", prime.index, prime.local_degree, prime=prime)
        for prime in primes_above(field, p)
    )


def place_of(prime):
    """Return the finite Place attached to a PrimeIdeal."""
    return Place(
        prime.field, "finite", prime.index, prime.local_degree, prime=prime
    )


def places(field, primes=()):
    """
    List archimedean places followed by the finite places above primes.

    Args:
        field (NumberField):
            The field.
        primes (iterable):
            Rational primes whose places are included.

    Returns:
        list:
            The Place objects.
    """
    result = list(archimedean_places(field))
    for p in sorted(set(primes)):
        result.extend(finite_places(field, p))
    return result


def finite_abs_exponent(alpha, prime):
    """
    Return the exponent x with |alpha|_P = p^x exactly.

    The normalised absolute value extends |.|_p, so x = -v_P(alpha)/e.

    Returns:
        Fraction/float:
            The exponent, -math.inf for zero.
    """
    v = valuation(alpha, prime)
    if v == math.inf:
        return -math.inf
    return Fraction(-v, prime.e)


def abs_value(alpha, place, precision=80):
    """
    Enclose |alpha|_v.

    Args:
        alpha (FieldElement):
            The element.
        place (Place):
            The place.
        precision (int):
            The working precision in bits.

    Returns:
        ivmpf:
            An interval containing |alpha|_v (exactly 0 for zero).
    """
    ctx = interval_context(precision)
    if place.is_finite:
        exponent = finite_abs_exponent(alpha, place.prime)
        if exponent == -math.inf:
            return ctx.mpf(0)
        return ctx.exp(to_interval(ctx, exponent) * ctx.ln(place.p))
    return abs(place.embed(alpha, ctx))


def support_primes(alpha):
    """
    Return the rational primes below which alpha may have non-zero valuation.

    These divide the numerator or denominator of N(alpha) or the common
    denominator of the coordinates.
    """
    norm = alpha.norm()
    primes = set(sympy.primefactors(abs(norm.numerator)))
    primes |= set(sympy.primefactors(norm.denominator))
    primes |= set(sympy.primefactors(alpha.den))
    return sorted(primes)


def product_formula_residual(alpha, precision=80):
    """
    Enclose sum_v n_v log|alpha|_v for a non-zero element.

    The result contains zero whenever the arithmetic is correct.

    Args:
        alpha (FieldElement):
            A non-zero element.
        precision (int):
            The working precision in bits.

    Returns:
        ivmpf:
            The enclosure of the sum.
    """
    if alpha.is_zero():
        raise HypothesisError("the product formula needs a non-zero element")
    ctx = interval_context(precision)
    total = ctx.mpf(0)
    for place in archimedean_places(alpha.field):
        total += to_interval(ctx, place.weight) * ctx.ln(
            abs(place.embed(alpha, ctx))
        )
    for p in support_primes(alpha):
        for place in finite_places(alpha.field, p):
            exponent = finite_abs_exponent(alpha, place.prime)
            total += to_interval(ctx, place.weight * exponent) * ctx.ln(p)
    return total
