"""Univariate polynomials over supported number fields and field embeddings.

Polynomials are lists of FieldElement coefficients, constant term first.
Roots in a field are found with Trager's norm method: after a shift
x -> x - s*w the norm of the polynomial down to Q is squarefree, its
irreducible factors over Q are found with sympy, and every factor of degree
[L:Q] is intersected with the shifted polynomial by a gcd over L. A linear
gcd is a root.

Example usage:
    field = make_field("cyclotomic", 8)
    roots = roots_in_field([field.element(-2), field.zero, field.one], field)
    # the two square roots of 2 in Q(zeta 8)
    sqrt5 = embed_field(make_field("quadratic", 5),
                        make_field("cyclotomic", 5))
"""

import functools
import logging
from fractions import Fraction

import sympy

from heightcert.errors import FieldMismatchError, HypothesisError
from heightcert.numfield import RATIONALS

logger = logging.getLogger(__name__)

_T = sympy.Symbol("t")
_X = sympy.Symbol("x")


def poly_trim(coeffs):
    """Drop zero leading coefficients."""
    coeffs = list(coeffs)
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def poly_eval(coeffs, value):
    """Evaluate a polynomial (constant first) at a field element."""
    result = value.field.zero
    for c in reversed(coeffs):
        result = result * value + c
    return result


def poly_divmod(numerator, denominator):
    """
    Divide two polynomials over a field.

    Args:
        numerator (list):
            The dividend, constant first.
        denominator (list):
            The non-zero divisor, constant first.

    Returns:
        tuple:
            (quotient, remainder) as trimmed coefficient lists.
    """
    denominator = poly_trim(denominator)
    if not denominator:
        raise ZeroDivisionError("polynomial division by zero")
    remainder = poly_trim(numerator)
    lead_inverse = denominator[-1].inverse()
    shift_total = len(remainder) - len(denominator)
    if shift_total < 0:
        return [], remainder
    quotient = [denominator[0].field.zero] * (shift_total + 1)
    while len(remainder) >= len(denominator):
        shift = len(remainder) - len(denominator)
        factor = remainder[-1] * lead_inverse
        quotient[shift] = factor
        for i, c in enumerate(denominator):
            remainder[shift + i] = remainder[shift + i] - factor * c
        remainder.pop()
        remainder = poly_trim(remainder)
    return poly_trim(quotient), remainder


def poly_monic(coeffs):
    """Scale a non-zero polynomial to be monic."""
    coeffs = poly_trim(coeffs)
    inverse = coeffs[-1].inverse()
    return [c * inverse for c in coeffs]


def poly_gcd(first, second):
    """Return the monic gcd of two polynomials over a field."""
    a, b = poly_trim(first), poly_trim(second)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    return poly_monic(a)


def poly_derivative(coeffs):
    """Return the formal derivative."""
    return poly_trim([c * k for k, c in enumerate(coeffs)][1:])


def _element_expr(alpha):
    """Return an element as a sympy polynomial expression in t."""
    return sum(
        sympy.Rational(c.numerator, c.denominator) * _T**j
        for j, c in enumerate(alpha.coeffs)
    )


def _rational_coeffs(poly):
    """Return the Fraction coefficients (constant first) of a sympy Poly."""
    return [
        Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())
    ]


def roots_in_field(coeffs, field):
    """
    Find the roots in a field of a polynomial over that field.

    Args:
        coeffs (list):
            The coefficients (constant first), FieldElements of the field or
            rationals.
        field (NumberField):
            The field.

    Returns:
        list:
            The distinct roots, sorted by their coordinates.
    """
    coeffs = poly_trim([field.element(c) for c in coeffs])
    if len(coeffs) <= 1:
        return []

    # Work with the squarefree part
    derivative = poly_derivative(coeffs)
    common = poly_gcd(coeffs, derivative)
    if len(common) > 1:
        coeffs, _ = poly_divmod(coeffs, common)
    if len(coeffs) == 2:
        return [-coeffs[0] / coeffs[1]]

    if field.degree == 1:
        poly = sympy.Poly(
            [_element_expr(c) for c in reversed(coeffs)], _X, domain="QQ"
        )
        _, factors = poly.factor_list()
        roots = []
        for factor, _ in factors:
            if factor.degree() == 1:
                a, b = _rational_coeffs(factor)
                roots.append(field.element(-a / b))
        return sorted(roots, key=lambda r: r.coeffs)

    minpoly = sympy.Poly(list(reversed(field.minpoly)), _T)
    shift = 0
    for attempt in range(1, 4 * field.degree + 8):
        shifted_expr = sum(
            _element_expr(c) * (_X - shift * _T) ** k
            for k, c in enumerate(coeffs)
        )
        norm = sympy.Poly(
            sympy.resultant(minpoly.as_expr(), shifted_expr, _T), _X
        )
        if norm.gcd(norm.diff(_X)).degree() == 0:
            break
        shift = attempt // 2 + 1 if attempt % 2 else -(attempt // 2)
        logger.debug("norm not squarefree, retrying with shift %d", shift)
    else:
        raise HypothesisError("no squarefree norm found for Trager's method")

    # The shifted polynomial over L, as FieldElement coefficients
    theta = field.gen
    shifted = [field.zero]
    linear = [theta * (-shift), field.one]
    power = [field.one]
    for c in coeffs:
        shifted = _poly_add(shifted, [c * q for q in power])
        power = _poly_mul(power, linear)
    shifted = poly_trim(shifted)

    roots = []
    _, factors = norm.factor_list()
    for factor, _ in factors:
        if factor.degree() != field.degree:
            continue
        rational = [field.element(c) for c in _rational_coeffs(factor)]
        common = poly_gcd(shifted, rational)
        if len(common) == 2:
            root = -common[0]
            roots.append(root - theta * shift)
    return sorted(roots, key=lambda r: r.coeffs)


def _poly_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    return [x + y for x, y in zip(a, b)] + list(a[len(b):])


def _poly_mul(a, b):
    field = a[0].field
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


class FieldEmbedding:
    """
    An embedding of a subfield K into a field L.

    Attributes:
        source (NumberField):
            The subfield K.
        target (NumberField):
            The field L.
        image (FieldElement):
            The image in L of the generator of K.
    """

    def __init__(self, source, target, image):
        self.source = source
        self.target = target
        self.image = image

    def __call__(self, alpha):
        """Map an element of K into L."""
        alpha = self.source.element(alpha)
        result = self.target.zero
        for c in reversed(alpha.coeffs):
            result = result * self.image + c
        return result

    @functools.cached_property
    def _basis_matrix(self):
        columns = []
        power = self.target.one
        for _ in range(self.source.degree):
            columns.append([sympy.Rational(c.numerator, c.denominator)
                            for c in power.coeffs])
            power = power * self.image
        return sympy.Matrix(columns).T

    def restrict(self, beta):
        """
        Pull an element of L that lies in the image of K back to K.

        Args:
            beta (FieldElement):
                An element of L.

        Returns:
            FieldElement:
                The preimage in K.

        Raises:
            HypothesisError:
                If beta is not in the image of K.
        """
        beta = self.target.element(beta)
        if self.source.degree == 1:
            if not beta.is_rational():
                raise HypothesisError(f"{beta} is not rational")
            return self.source.element(beta.rational())
        rhs = sympy.Matrix(
            [sympy.Rational(c.numerator, c.denominator) for c in beta.coeffs]
        )
        try:
            solution, params = self._basis_matrix.gauss_jordan_solve(rhs)
        except ValueError as e:
            raise HypothesisError(
                f"{beta} does not lie in {self.source}"
            ) from e
        return self.source.element(
            [Fraction(int(c.p), int(c.q)) for c in solution]
        )

    def __repr__(self):
        return f"FieldEmbedding({self.source} -> {self.target}: {self.image})"


@functools.lru_cache(maxsize=None)
def embed_field(source, target):
    """
    Return an embedding of a supported field into another.

    Args:
        source (NumberField):
            The subfield K.
        target (NumberField):
            The field L.

    Returns:
        FieldEmbedding:
            The embedding (the first root in canonical order).

    Raises:
        FieldMismatchError:
            If K does not embed into L.
    """
    if source is target:
        return FieldEmbedding(source, target, target.gen)
    if source is RATIONALS:
        return FieldEmbedding(source, target, target.zero)
    if (
        source.kind == "cyclotomic"
        and target.kind == "cyclotomic"
        and target.parameter % source.parameter == 0
    ):
        zeta = target.gen ** (target.parameter // source.parameter)
        return FieldEmbedding(source, target, zeta)
    if source.degree <= target.degree and target.degree % source.degree == 0:
        roots = roots_in_field(list(source.minpoly), target)
        if roots:
            return FieldEmbedding(source, target, roots[0])
    raise FieldMismatchError(f"{source} does not embed into {target}")


def restrict_to_subfield(beta, subfield):
    """Pull an element of L fixed by Gal(L/K) back to the subfield K."""
    return embed_field(subfield, beta.field).restrict(beta)
