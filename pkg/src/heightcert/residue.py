"""Finite residue fields F_p[x]/(g) with g a monic irreducible polynomial.

Residue fields arise as O_K/P for the primes P of a supported number field.
Elements support the field operations needed by the Weierstrass group law,
so reduced points reuse the same arithmetic as points over number fields.

Example usage:
    field = ResidueField(3, (1, 0, 1))      # F_9 = F_3[x]/(x^2 + 1)
    i = field.gen
    print(i * i == field.element(-1))       # True
    print(i ** 8 == field.one)              # True
"""

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_gcdex,
    gf_mul,
    gf_neg,
    gf_rem,
    gf_strip,
    gf_sub,
)


class ResidueField:
    """
    The finite field F_p[x]/(modulus).

    Attributes:
        p (int):
            The characteristic.
        modulus (tuple):
            The monic irreducible modulus, coefficients from the leading one
            down, each in [0, p).
        f (int):
            The degree of the modulus, so the field has p^f elements.
        size (int):
            The number of elements p^f.
    """

    def __init__(self, p, modulus):
        """
        Initialise the residue field.

        Args:
            p (int):
                The characteristic.
            modulus (tuple):
                A monic irreducible polynomial over F_p, leading first.
        """
        self.p = p
        self.modulus = tuple(int(c) % p for c in modulus)
        self.f = len(self.modulus) - 1
        self.size = p**self.f

    def __eq__(self, other):
        return (
            isinstance(other, ResidueField)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"ResidueField(p={self.p}, f={self.f})"

    def element(self, value):
        """
        Coerce an int or a coefficient list (leading first) into the field.

        Args:
            value (int/list/ResidueElement):
                The value.

        Returns:
            ResidueElement:
                The residue class.
        """
        if isinstance(value, ResidueElement):
            return value
        if isinstance(value, int):
            return ResidueElement(self, [value % self.p])
        coeffs = [int(c) % self.p for c in value]
        return ResidueElement(
            self, gf_rem(gf_strip(coeffs), list(self.modulus), self.p, ZZ)
        )

    @property
    def zero(self):
        return ResidueElement(self, [])

    @property
    def one(self):
        return ResidueElement(self, [1])

    @property
    def gen(self):
        """The class of x."""
        return self.element([1, 0])


class ResidueElement:
    """
    An element of a ResidueField.

    Attributes:
        field (ResidueField):
            The field.
        coeffs (tuple):
            The reduced representative, leading coefficient first, with no
            leading zeros (empty for zero).
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(int(c) for c in gf_strip(list(coeffs)))

    def _coerce(self, other):
        if isinstance(other, ResidueElement):
            return other
        if isinstance(other, int):
            return self.field.element(other)
        return NotImplemented

    def _wrap(self, coeffs):
        return ResidueElement(self.field, coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(
            gf_add(list(self.coeffs), list(other.coeffs), self.field.p, ZZ)
        )

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(gf_neg(list(self.coeffs), self.field.p, ZZ))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(
            gf_sub(list(self.coeffs), list(other.coeffs), self.field.p, ZZ)
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        prod = gf_mul(list(self.coeffs), list(other.coeffs), p, ZZ)
        return self._wrap(gf_rem(prod, list(self.field.modulus), p, ZZ))

    __rmul__ = __mul__

    def inverse(self):
        """Return the multiplicative inverse."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a residue field")
        s, _, h = gf_gcdex(
            list(self.coeffs), list(self.field.modulus), self.field.p, ZZ
        )
        # h is the monic gcd, which is 1 for an irreducible modulus
        assert list(h) == [1]
        return self._wrap(s)

    def __truediv__(self, other):
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

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        if not isinstance(other, ResidueElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __int__(self):
        if len(self.coeffs) > 1:
            raise ValueError(f"{self} is not in the prime field")
        return self.coeffs[0] if self.coeffs else 0

    def __str__(self):
        if len(self.coeffs) <= 1:
            return str(int(self))
        n = len(self.coeffs) - 1
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                power = n - k
                mono = "" if power == 0 else (
                    "t" if power == 1 else f"t^{power}"
                )
                coeff = "" if (c == 1 and mono) else str(c)
                terms.append(
                    f"{coeff}*{mono}" if coeff and mono else coeff + mono
                )
        return " + ".join(terms)

    def __repr__(self):
        return f"ResidueElement({self}; p={self.field.p})"
