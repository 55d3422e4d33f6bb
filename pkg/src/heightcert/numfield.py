"""Exact arithmetic in the rationals, quadratic fields and cyclotomic fields.

A NumberField is one of Q, Q(sqrt d) or Q(zeta m). Its ring of integers is
Z[w] for the generator w (written θ in the documentation), so elements are
stored as integer coordinate vectors in the power basis of w over a common
positive denominator. Every supported field is abelian over Q, and the
Galois group is represented by GaloisElement objects acting on elements.

Example usage:
    field = make_field("cyclotomic", 5)
    zeta = field.gen
    sigma = frobenius_element(field, 2)
    print(galois_apply(sigma, zeta))        # w^2
    print((zeta + 1).inverse())
    print(extension_info(make_field("cyclotomic", 9), 3))
"""

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import sympy
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_from_int_poly

from heightcert.errors import (
    FieldMismatchError,
    HypothesisError,
    UnsupportedFieldError,
)

KINDS = ("rationals", "quadratic", "cyclotomic")


class NumberField:
    """
    A supported number field with its integral power basis.

    Fields are created through make_field, which caches them, so two
    fields with the same kind and parameter are the same object.

    Attributes:
        kind (str):
            One of "rationals", "quadratic" or "cyclotomic".
        parameter (int):
            The squarefree d of Q(sqrt d), the conductor m of Q(zeta m), or
            1 for the rationals.
        degree (int):
            The degree n over Q.
        minpoly (tuple):
            The monic minimal polynomial of the generator, integer
            coefficients from the constant term upwards.
        discriminant (int):
            The field discriminant.
        conductor (int):
            The smallest m with the field inside Q(zeta m).
        theta (str):
            A description of the generator w.
    """

    def __init__(self, kind, parameter):
        """
        Initialise the field.

        Args:
            kind (str):
                The field family.
            parameter (int):
                The family parameter, already validated and normalised.
        """
        self.kind = kind
        self.parameter = parameter
        x = sympy.Symbol("x")

        if kind == "rationals":
            self.minpoly = (0, 1)
            self.theta = "0"
            self.discriminant = 1
            self.conductor = 1

        elif kind == "quadratic":
            d = parameter
            if d % 4 == 1:
                self.minpoly = (-(d - 1) // 4, -1, 1)
                self.theta = f"(1+sqrt({d}))/2"
                self.discriminant = d
            else:
                self.minpoly = (-d, 0, 1)
                self.theta = f"sqrt({d})"
                self.discriminant = 4 * d
            self.conductor = abs(self.discriminant)

        else:
            m = parameter
            coeffs = sympy.cyclotomic_poly(m, x, polys=True).all_coeffs()
            self.minpoly = tuple(int(c) for c in reversed(coeffs))
            self.theta = f"exp(2*pi*i/{m})"
            self.discriminant = int(
                sympy.discriminant(sympy.cyclotomic_poly(m, x), x)
            )
            self.conductor = m

        self.degree = len(self.minpoly) - 1

    def __repr__(self):
        return f"NumberField({self})"

    def __str__(self):
        if self.kind == "rationals":
            return "Q"
        if self.kind == "quadratic":
            return f"Q(sqrt {self.parameter})"
        return f"Q(zeta {self.parameter})"

    def __reduce__(self):
        return (make_field, (self.kind, self.parameter))

    @property
    def is_rationals(self):
        """Return True for Q."""
        return self.kind == "rationals"

    @property
    def zero(self):
        """The zero element."""
        return FieldElement(self, (0,) * self.degree)

    @property
    def one(self):
        """The unit element."""
        return self.element(1)

    @property
    def gen(self):
        """The generator w of the ring of integers."""
        if self.degree == 1:
            return FieldElement(self, (0,))
        return FieldElement(self, (0, 1) + (0,) * (self.degree - 2))

    def element(self, value):
        """
        Coerce a value into the field.

        Args:
            value (int/Fraction/FieldElement/list):
                A rational, an element of this field, or a list of rational
                coordinates in the power basis.

        Returns:
            FieldElement:
                The element.
        """
        if isinstance(value, FieldElement):
            if value.field is not self:
                if value.is_rational():
                    return self.element(value.rational())
                raise FieldMismatchError(
                    f"element of {value.field} used in {self}"
                )
            return value
        if isinstance(value, (int, Fraction)):
            value = Fraction(value)
            num = (value.numerator,) + (0,) * (self.degree - 1)
            return FieldElement(self, num, value.denominator)
        coords = [Fraction(c) for c in value]
        if len(coords) != self.degree:
            raise ValueError(
                f"expected {self.degree} coordinates, got {len(coords)}"
            )
        den = math.lcm(*(c.denominator for c in coords))
        return FieldElement(
            self, tuple(int(c * den) for c in coords), den
        )

    def polynomial_value(self, coeffs, value):
        """Evaluate a polynomial (constant term first) at an element."""
        result = self.zero
        for c in reversed(coeffs):
            result = result * value + c
        return result


@functools.lru_cache(maxsize=None)
def _cached_field(kind, parameter):
    return NumberField(kind, parameter)


def make_field(kind, parameter=1):
    """
    Build (or fetch) a supported number field.

    Args:
        kind (str):
            "rationals", "quadratic" or "cyclotomic".
        parameter (int):
            The squarefree d for quadratic fields, m >= 1 for cyclotomic
            fields; ignored for the rationals.

    Returns:
        NumberField:
            The field. cyclotomic(1) and cyclotomic(2) are the rationals
            and cyclotomic(m) with m = 2 mod 4 is cyclotomic(m/2).

    Raises:
        UnsupportedFieldError:
            For an unknown kind, a non-squarefree d, d in {0, 1}, or m < 1.
    """
    if kind not in KINDS:
        raise UnsupportedFieldError(f"unsupported field kind {kind!r}")
    if kind == "rationals":
        return _cached_field("rationals", 1)

    parameter = int(parameter)
    if kind == "quadratic":
        if parameter in (0, 1):
            raise UnsupportedFieldError(f"Q(sqrt {parameter}) is not a field")
        if not sympy.ntheory.factor_.core(abs(parameter)) == abs(parameter):
            raise UnsupportedFieldError(f"{parameter} is not squarefree")
        return _cached_field("quadratic", parameter)

    if parameter < 1:
        raise UnsupportedFieldError(f"cyclotomic parameter {parameter} < 1")
    if parameter % 4 == 2:
        parameter //= 2
    if parameter == 1:
        return _cached_field("rationals", 1)
    return _cached_field("cyclotomic", parameter)


RATIONALS = make_field("rationals")


class FieldElement:
    """
    An element of a supported number field.

    The element is num / den with num an integer vector in the power basis
    of the generator and den a positive integer coprime to the content of
    num. Elements are immutable and hashable.

    Attributes:
        field (NumberField):
            The field the element lives in.
        num (tuple):
            Integer coordinates of den times the element.
        den (int):
            The positive common denominator.
    """

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den=1):
        """
        Initialise and normalise the element.

        Args:
            field (NumberField):
                The field.
            num (tuple):
                Integer coordinates (length equal to the field degree).
            den (int):
                A non-zero common denominator.
        """
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        g = math.gcd(den, *num)
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
        self.field = field
        self.num = tuple(num)
        self.den = den

    # Coordinates and predicates

    @property
    def coeffs(self):
        """The rational coordinates in the power basis."""
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self):
        """Return True for the zero element."""
        return not any(self.num)

    def is_rational(self):
        """Return True if the element lies in Q."""
        return not any(self.num[1:])

    def rational(self):
        """Return the element as a Fraction (it must be rational)."""
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def is_integral(self):
        """Return True if the element lies in the ring of integers."""
        return self.den == 1

    # Arithmetic

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                return self.field.element(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return FieldElement(
                self.field,
                tuple(a + b for a, b in zip(self.num, other.num)),
                self.den,
            )
        return FieldElement(
            self.field,
            tuple(
                a * other.den + b * self.den
                for a, b in zip(self.num, other.num)
            ),
            self.den * other.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return FieldElement(
                self.field,
                tuple(c * other.numerator for c in self.num),
                self.den * other.denominator,
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(
            self.field,
            _mul_mod(self.num, other.num, self.field.minpoly),
            self.den * other.den,
        )

    __rmul__ = __mul__

    def inverse(self):
        """
        Return the multiplicative inverse.

        The inverse is the product of the non-trivial Galois conjugates
        divided by the norm.

        Raises:
            ZeroDivisionError:
                For the zero element.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        if self.field.degree == 1:
            return self.field.element(1 / self.rational())
        cofactor = self.field.one
        for sigma in galois_group(self.field):
            if not sigma.is_identity():
                cofactor = cofactor * galois_apply(sigma, self)
        norm = (self * cofactor).rational()
        return cofactor * (1 / norm)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational() == other
        if not isinstance(other, FieldElement):
            return NotImplemented
        return (
            self.field is other.field
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        key = (self.field.kind, self.field.parameter)
        return hash(key + (self.num, self.den))

    # Global invariants

    def norm(self):
        """Return the norm N_{K/Q} of the element as a Fraction."""
        result = self
        for sigma in galois_group(self.field):
            if not sigma.is_identity():
                result = result * galois_apply(sigma, self)
        return result.rational()

    def trace(self):
        """Return the trace Tr_{K/Q} of the element as a Fraction."""
        total = self.field.zero
        for sigma in galois_group(self.field):
            total = total + galois_apply(sigma, self)
        return total.rational()

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if j == 0 else ("w" if j == 1 else f"w^{j}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self):
        return f"FieldElement({self.field}, {self})"


def _mul_mod(a, b, minpoly):
    """Multiply integer vectors modulo a monic integer polynomial."""
    n = len(minpoly) - 1
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    return tuple(_reduce_mod(prod, minpoly))


def _reduce_mod(coeffs, minpoly):
    """Reduce an integer vector (constant first) modulo a monic polynomial."""
    n = len(minpoly) - 1
    coeffs = list(coeffs)
    for k in range(len(coeffs) - 1, n - 1, -1):
        c = coeffs[k]
        if c:
            for j in range(n):
                coeffs[k - n + j] -= c * minpoly[j]
    coeffs = coeffs[:n]
    return coeffs + [0] * (n - len(coeffs))


def factor_mod_p(poly, p):
    """
    Factor an integer polynomial modulo a prime.

    Args:
        poly (tuple):
            Integer coefficients, constant term first.
        p (int):
            The prime.

    Returns:
        list:
            Pairs (factor, multiplicity) with each factor monic, given as
            a list of ints in [0, p) from the leading coefficient down,
            sorted lexicographically.
    """
    dense = gf_from_int_poly(list(reversed(poly)), p)
    _, factors = gf_factor(dense, p, ZZ)
    result = [([int(c) for c in f], int(k)) for f, k in factors]
    return sorted(result)


class GaloisElement:
    """
    An automorphism of a supported abelian field.

    cyclotomic(m): the unit c modulo m acting as zeta -> zeta^c.
    quadratic: c = 1 (identity) or c = -1 (conjugation).
    rationals: c = 1 only.

    Attributes:
        field (NumberField):
            The field acted on.
        c (int):
            The encoding of the automorphism described above.
    """

    __slots__ = ("field", "c")

    def __init__(self, field, c):
        """
        Initialise the automorphism.

        Args:
            field (NumberField):
                The field.
            c (int):
                The automorphism code.
        """
        if field.kind == "cyclotomic":
            c %= field.parameter
            if math.gcd(c, field.parameter) != 1:
                raise ValueError(f"{c} is not a unit mod {field.parameter}")
        elif field.kind == "quadratic":
            if c not in (1, -1):
                raise ValueError("quadratic automorphisms are 1 and -1")
        elif c != 1:
            raise ValueError("the rationals have only the identity")
        self.field = field
        self.c = c

    def is_identity(self):
        """Return True for the identity."""
        return self.c == 1

    def __mul__(self, other):
        if other.field is not self.field:
            raise FieldMismatchError("composing automorphisms of two fields")
        return GaloisElement(self.field, self.c * other.c)

    def __pow__(self, exponent):
        if self.field.kind == "cyclotomic":
            return GaloisElement(
                self.field, pow(self.c, exponent, self.field.parameter)
            )
        return GaloisElement(self.field, self.c ** (exponent % 2 or 2))

    def order(self):
        """Return the order of the automorphism."""
        k, current = 1, self
        while not current.is_identity():
            current = current * self
            k += 1
        return k

    def __eq__(self, other):
        return (
            isinstance(other, GaloisElement)
            and self.field is other.field
            and self.c == other.c
        )

    def __hash__(self):
        return hash((self.field.kind, self.field.parameter, self.c))

    def __repr__(self):
        return f"GaloisElement({self.field}, {self.c})"

    def __str__(self):
        if self.field.kind == "cyclotomic":
            return f"zeta -> zeta^{self.c}"
        if self.c == 1:
            return "identity"
        return "conjugation"

    def __call__(self, alpha):
        return galois_apply(self, alpha)


@functools.lru_cache(maxsize=None)
def galois_group(field):
    """
    List the automorphisms of a field, identity first.

    Args:
        field (NumberField):
            The field.

    Returns:
        tuple:
            The GaloisElement objects.
    """
    if field.kind == "cyclotomic":
        m = field.parameter
        return tuple(
            GaloisElement(field, c)
            for c in range(1, m)
            if math.gcd(c, m) == 1
        )
    if field.kind == "quadratic":
        return (GaloisElement(field, 1), GaloisElement(field, -1))
    return (GaloisElement(field, 1),)


def galois_apply(sigma, alpha):
    """
    Apply an automorphism to an element.

    Args:
        sigma (GaloisElement):
            The automorphism.
        alpha (FieldElement):
            The element, over the same field.

    Returns:
        FieldElement:
            sigma(alpha).

    Raises:
        FieldMismatchError:
            If sigma and alpha live over different fields.
    """
    field = sigma.field
    if isinstance(alpha, (int, Fraction)):
        return field.element(alpha)
    if alpha.field is not field:
        if alpha.is_rational():
            return field.element(alpha.rational())
        raise FieldMismatchError(
            f"automorphism of {field} applied to element of {alpha.field}"
        )
    if sigma.is_identity():
        return alpha

    if field.kind == "quadratic":
        a, b = alpha.num
        if field.minpoly[1] == 0:
            # w = sqrt(d) goes to -w
            return FieldElement(field, (a, -b), alpha.den)
        # w = (1+sqrt(d))/2 goes to 1 - w
        return FieldElement(field, (a + b, -b), alpha.den)

    # Cyclotomic: permute the powers of zeta, then reduce modulo Phi_m
    m = field.parameter
    spread = [0] * m
    for j, a in enumerate(alpha.num):
        if a:
            spread[(j * sigma.c) % m] += a
    return FieldElement(
        field, tuple(_reduce_mod(spread, field.minpoly)), alpha.den
    )


def is_ramified(field, p):
    """Return True if the rational prime p ramifies in the field."""
    return field.discriminant % p == 0


def frobenius_element(field, p):
    """
    Return the Frobenius automorphism at an unramified prime.

    Args:
        field (NumberField):
            The field L.
        p (int):
            A rational prime unramified in L.

    Returns:
        GaloisElement:
            The automorphism inducing x -> x^p on every residue field above
            p.

    Raises:
        HypothesisError:
            If p ramifies in L.
    """
    if is_ramified(field, p):
        raise HypothesisError(f"{p} is ramified in {field}")
    if field.kind == "cyclotomic":
        return GaloisElement(field, p % field.parameter)
    if field.kind == "quadratic":
        factors = factor_mod_p(field.minpoly, p)
        return GaloisElement(field, 1 if len(factors) == 2 else -1)
    return GaloisElement(field, 1)


def inertia_tau(field, p):
    """
    Return the inertia generator used for descent at a ramified prime.

    For cyclotomic(m) with p | m this is the smallest unit c generating the
    subgroup of units congruent to 1 modulo m/p, so it fixes Q(zeta m/p).
    For a quadratic field it is the conjugation.

    Args:
        field (NumberField):
            The field L.
        p (int):
            A rational prime ramified in L.

    Returns:
        GaloisElement:
            The automorphism tau.

    Raises:
        HypothesisError:
            If p is unramified in L.
    """
    if not is_ramified(field, p):
        raise HypothesisError(f"{p} is unramified in {field}")
    if field.kind == "quadratic":
        return GaloisElement(field, -1)

    m = field.parameter
    sub = m // p
    subgroup = [
        c for c in range(2, m) if math.gcd(c, m) == 1 and c % sub == 1 % sub
    ]
    size = len(subgroup) + 1
    for c in subgroup:
        tau = GaloisElement(field, c)
        if tau.order() == size:
            return tau
    raise HypothesisError(f"no inertia generator for {p} in {field}")


def fixed_field(field, tau):
    """
    Return the subfield fixed by an inertia generator from inertia_tau.

    Args:
        field (NumberField):
            The field L.
        tau (GaloisElement):
            The inertia generator.

    Returns:
        NumberField:
            Q for quadratic L, cyclotomic(m/p) for cyclotomic(m).
    """
    if field.kind == "quadratic":
        return RATIONALS
    m = field.parameter
    for p in sympy.primefactors(m):
        sub = m // p
        if tau.c % sub == 1 % sub and len(galois_group(field)) // len(
            galois_group(make_field("cyclotomic", sub))
        ) == tau.order():
            return make_field("cyclotomic", sub)
    raise HypothesisError(f"{tau} is not an inertia generator of {field}")


@dataclass(frozen=True)
class ExtensionInfo:
    """
    Ramification data of L/Q at a rational prime.

    Attributes:
        field (NumberField):
            The field L.
        p (int):
            The rational prime.
        e (int):
            The ramification index e_p(L/Q).
        k (int):
            The valuation ord_p of the local conductor.
    """

    field: NumberField
    p: int
    e: int
    k: int

    def __str__(self):
        return f"{self.field} at {self.p}: e={self.e}, k={self.k}"


def extension_info(field, p):
    """
    Compute the ramification index and local conductor valuation at p.

    The local conductor is the smallest m with L_P inside Q_p(zeta m); for
    the supported families its p-part is the p-part of the global
    conductor (m for normalised cyclotomic fields, |disc| for quadratic
    fields).

    Args:
        field (NumberField):
            The field L.
        p (int):
            A rational prime.

    Returns:
        ExtensionInfo:
            The ramification data.
    """
    k = sympy.multiplicity(p, field.conductor)
    if k == 0:
        return ExtensionInfo(field, p, 1, 0)
    if field.kind == "quadratic":
        return ExtensionInfo(field, p, 2, k)
    return ExtensionInfo(field, p, int(sympy.totient(p**k)), k)
