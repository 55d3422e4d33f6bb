"""Weil heights on projective space and logarithmic v-adic distances.

The absolute logarithmic Weil height is computed from integral coordinates:
the archimedean part from interval enclosures of every embedding and the
finite part exactly, as the logarithm of the norm of the ideal generated by
the coordinates. Distances at finite places are exact rational multiples of
log p.

Points at infinity need no special case: the projective formulas cover
them.

Example usage:
    x = ProjPoint.of(RATIONALS, [1, 0])
    y = ProjPoint.of(RATIONALS, [1, 5])
    five = finite_places(RATIONALS, 5)[0]
    print(delta_v(x, y, five))                  # log 5
    lhs, rhs, holds = check_local_global(x, y, [five])
"""

import itertools
import logging
import math
from fractions import Fraction

from heightcert.errors import (
    CongruenceError,
    FieldMismatchError,
    HypothesisError,
)
from heightcert.intervals import (
    LogSum,
    decide,
    interval_context,
    iv_max_all,
    to_interval,
)
from heightcert.numfield import FieldElement
from heightcert.places import (
    archimedean_places,
    ideal_norm_of_generators,
    valuation,
)

logger = logging.getLogger(__name__)


class ProjPoint:
    """
    A point of projective space over a supported field.

    Attributes:
        field (NumberField):
            The field of definition.
        coords (tuple):
            The homogeneous coordinates, FieldElements not all zero.
    """

    __slots__ = ("field", "coords")

    def __init__(self, coords):
        """
        Initialise the point.

        Args:
            coords (list):
                FieldElements over one field, not all zero.

        Raises:
            HypothesisError:
                If every coordinate is zero.
            FieldMismatchError:
                If the coordinates live over different fields.
        """
        coords = tuple(coords)
        field = coords[0].field
        if any(c.field is not field for c in coords):
            raise FieldMismatchError("coordinates over different fields")
        if all(c.is_zero() for c in coords):
            raise HypothesisError("[0; ...; 0] is not a projective point")
        self.field = field
        self.coords = coords

    @classmethod
    def of(cls, field, values):
        """Build a point from rationals or elements coerced into a field."""
        return cls([field.element(v) for v in values])

    @property
    def dimension(self):
        return len(self.coords) - 1

    def minors(self, other):
        """Return the 2x2 minors x_i*y_j - x_j*y_i for i < j."""
        if other.field is not self.field:
            raise FieldMismatchError(
                f"points over {self.field} and {other.field}"
            )
        if len(other.coords) != len(self.coords):
            raise HypothesisError("points in different projective spaces")
        return [
            self.coords[i] * other.coords[j] - self.coords[j] * other.coords[i]
            for i, j in itertools.combinations(range(len(self.coords)), 2)
        ]

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return all(m.is_zero() for m in self.minors(other))

    def __hash__(self):
        # Hash the scaling normalised so the first non-zero coordinate is 1
        lead = next(c for c in self.coords if not c.is_zero())
        return hash(tuple(c / lead for c in self.coords))

    def scale(self, factor):
        """Multiply every coordinate by a non-zero element."""
        return ProjPoint([c * factor for c in self.coords])

    def integral(self):
        """
        Return integral coordinates for the same point.

        Denominators are cleared and the common integer content removed.

        Returns:
            list:
                Integral FieldElements.
        """
        den = math.lcm(*(c.den for c in self.coords))
        nums = [
            FieldElement(self.field, c.num, 1) * (den // c.den)
            for c in self.coords
        ]
        content = math.gcd(*(k for c in nums for k in c.num))
        if content > 1:
            nums = [
                FieldElement(self.field, tuple(k // content for k in c.num))
                for c in nums
            ]
        return nums

    def __str__(self):
        return "[" + "; ".join(str(c) for c in self.coords) + "]"

    def __repr__(self):
        return f"ProjPoint({self})"


def _archimedean_log_max(values, place, ctx):
    """Enclose log max_k |sigma(values_k)| at an archimedean place."""
    return ctx.ln(iv_max_all(ctx, (abs(place.embed(v, ctx)) for v in values)))


def weil_height_parts(x):
    """
    Split h(x) into its archimedean evaluator and exact finite part.

    Args:
        x (ProjPoint):
            The point.

    Returns:
        tuple:
            (archimedean, finite) where archimedean(ctx) encloses
            (1/n) sum_sigma log max_k |sigma x_k| for integral coordinates
            and finite is the LogSum -(1/n) log N(x_0, ..., x_n).
    """
    coords = x.integral()
    n = x.field.degree
    norm = ideal_norm_of_generators(coords)
    finite = LogSum.log_of(norm).scale(Fraction(-1, n))

    def archimedean(ctx):
        total = ctx.mpf(0)
        for place in archimedean_places(x.field):
            total += to_interval(ctx, place.weight) * _archimedean_log_max(
                coords, place, ctx
            )
        return total

    return archimedean, finite


def weil_height(x, precision=80):
    """
    Enclose the absolute logarithmic Weil height h(x).

    Args:
        x (ProjPoint):
            The point.
        precision (int):
            The working precision in bits.

    Returns:
        ivmpf:
            An interval containing h(x).
    """
    archimedean, finite = weil_height_parts(x)
    ctx = interval_context(precision)
    return archimedean(ctx) + finite.enclose(ctx)


def finite_delta(x, y, prime):
    """
    Return c with delta_P(x, y) = c * log p exactly.

    Args:
        x (ProjPoint):
            The first point.
        y (ProjPoint):
            The second point.
        prime (PrimeIdeal):
            The prime P above p.

    Returns:
        Fraction/float:
            The coefficient, math.inf when x = y.
    """
    minors = x.minors(y)
    minor_val = min(valuation(m, prime) for m in minors)
    if minor_val == math.inf:
        return math.inf
    x_val = min(valuation(c, prime) for c in x.coords)
    y_val = min(valuation(c, prime) for c in y.coords)
    return Fraction(minor_val - x_val - y_val, prime.e)


def _archimedean_delta(x, y, place, ctx):
    minors = x.minors(y)
    return (
        _archimedean_log_max(x.coords, place, ctx)
        + _archimedean_log_max(y.coords, place, ctx)
        - _archimedean_log_max(minors, place, ctx)
    )


def delta_v(x, y, place, precision=80):
    """
    Enclose the logarithmic v-adic distance delta_v(x, y).

    delta_v(x, y) = -log(max|x_i y_j - x_j y_i|_v / (max|x_k|_v max|y_k|_v))

    Args:
        x (ProjPoint):
            The first point.
        y (ProjPoint):
            The second point.
        place (Place):
            The place v.
        precision (int):
            The working precision in bits.

    Returns:
        ivmpf/float:
            The enclosure, or math.inf when x = y.
    """
    if x == y:
        return math.inf
    ctx = interval_context(precision)
    if place.is_finite:
        coeff = finite_delta(x, y, place.prime)
        return to_interval(ctx, coeff) * ctx.ln(place.p)
    return _archimedean_delta(x, y, place, ctx)


def check_local_global(x, y, places, precision=80, precision_cap=4096):
    """
    Check h(x) + h(y) >= sum_{v in T} n_v delta_v(x, y) - log 2.

    Args:
        x (ProjPoint):
            The first point.
        y (ProjPoint):
            A point distinct from x.
        places (list):
            The set T of places.
        precision (int):
            The starting precision in bits.
        precision_cap (int):
            The largest precision used.

    Returns:
        tuple:
            (lhs, rhs, holds) with lhs and rhs intervals at the precision
            that decided the comparison.

    Raises:
        HypothesisError:
            If x = y.
    """
    if x == y:
        raise HypothesisError("the local-global inequality needs x != y")
    hx_arch, hx_fin = weil_height_parts(x)
    hy_arch, hy_fin = weil_height_parts(y)

    state = {}

    def lhs_minus_rhs(ctx):
        lhs = hx_arch(ctx) + hy_arch(ctx) + (hx_fin + hy_fin).enclose(ctx)
        rhs = LogSum({2: -1}).enclose(ctx)
        for place in places:
            if place.is_finite:
                coeff = finite_delta(x, y, place.prime)
                rhs += to_interval(ctx, place.weight * coeff) * ctx.ln(
                    place.p
                )
            else:
                rhs += to_interval(ctx, place.weight) * _archimedean_delta(
                    x, y, place, ctx
                )
        state["lhs"], state["rhs"] = lhs, rhs
        return lhs - rhs >= 0

    holds, prec = decide(
        lhs_minus_rhs, precision, precision_cap, "local-global inequality"
    )
    logger.debug("local-global inequality decided at %d bits", prec)
    return state["lhs"], state["rhs"], holds


def congruence_height_bound(
    x, y, primes, precision=80, precision_cap=4096
):
    """
    Check h(x) + h(y) >= (1/[L:Q]) sum_i log N(P_i) - log 2 for congruent
    points.

    Args:
        x (ProjPoint):
            The first point.
        y (ProjPoint):
            A point distinct from x, congruent to x modulo every prime.
        primes (list):
            Distinct PrimeIdeal objects.
        precision (int):
            The starting precision in bits.
        precision_cap (int):
            The largest precision used.

    Returns:
        tuple:
            (lhs, rhs, holds).

    Raises:
        HypothesisError:
            If x = y.
        CongruenceError:
            If x and y are not congruent modulo one of the primes.
    """
    if x == y:
        raise HypothesisError("the congruence bound needs x != y")
    n = x.field.degree
    rhs_exact = LogSum({2: -1})
    for prime in primes:
        if finite_delta(x, y, prime) < Fraction(1, prime.e):
            raise CongruenceError(prime)
        rhs_exact = rhs_exact + LogSum({prime.p: Fraction(prime.f, n)})

    state = {}

    def compare(ctx):
        lhs = weil_height(x, ctx.prec) + weil_height(y, ctx.prec)
        rhs = rhs_exact.enclose(ctx)
        state["lhs"], state["rhs"] = lhs, rhs
        return lhs - rhs >= 0

    holds, _ = decide(compare, precision, precision_cap, "congruence bound")
    return state["lhs"], state["rhs"], holds
