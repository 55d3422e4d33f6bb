"""The formal group of a reduced curve and its multiplication-by-p series.

Series are truncated power series over F_p stored as lists of ints indexed
by degree. With z = -x/y and w = -1/y the curve becomes

    w = z^3 + a1*z*w + a2*z^2*w + a3*w^2 + a4*z*w^2 + a6*w^3,

which is solved for w(z) by fixed-point iteration. The formal sum of z1 and
z2 comes from the chord through (z1, w(z1)) and (z2, w(z2)); substituting
z1 = [k](T) and z2 = T keeps every series univariate, so [p](T) is built by
repeated addition of T.

Example usage:
    series = formal_p_series(EllipticCurve(0, 0, 1, 0, 0), 2)
    print(series.first_nonzero)           # 4 (supersingular)
    print(formal_multiple(EllipticCurve(0, 0, 1, -1, 0), 2, 101, 4))
    # (0, 2, 0, 0, 94), that is 2T - 7T^4
"""

import logging
from dataclasses import dataclass

from heightcert.errors import BadPrimeError, HypothesisError, RefutedStepError

logger = logging.getLogger(__name__)


class _Series:
    """Truncated power series arithmetic over F_p up to a fixed degree."""

    def __init__(self, p, order):
        self.p = p
        self.order = order

    def trim(self, a):
        return [c % self.p for c in a[: self.order + 1]] + [0] * max(
            0, self.order + 1 - len(a)
        )

    def add(self, *terms):
        out = [0] * (self.order + 1)
        for term in terms:
            for i, c in enumerate(term[: self.order + 1]):
                out[i] += c
        return self.trim(out)

    def scale(self, k, a):
        return self.trim([k * c for c in a])

    def mul(self, a, b):
        out = [0] * (self.order + 1)
        for i, x in enumerate(a):
            if x:
                for j in range(self.order + 1 - i):
                    if b[j]:
                        out[i + j] += x * b[j]
        return self.trim(out)

    def inverse(self, a):
        """Invert a series with a unit constant term."""
        if a[0] % self.p == 0:
            raise ZeroDivisionError("series without a unit constant term")
        lead = pow(a[0], -1, self.p)
        out = [0] * (self.order + 1)
        out[0] = lead
        for n in range(1, self.order + 1):
            total = sum(a[k] * out[n - k] for k in range(1, n + 1))
            out[n] = (-total * lead) % self.p
        return out

    def monomial(self, degree, coeff=1):
        out = [0] * (self.order + 1)
        if degree <= self.order:
            out[degree] = coeff % self.p
        return out


def _w_coefficients(curve, ring):
    """Return w(z) as a series in z, by fixed-point iteration."""
    a1, a2, a3, a4, a6 = curve.a_invariants
    z = ring.monomial(1)
    z2 = ring.mul(z, z)
    z3 = ring.mul(z2, z)
    w = list(z3)
    for _ in range(ring.order):
        w2 = ring.mul(w, w)
        w = ring.add(
            z3,
            ring.scale(a1, ring.mul(z, w)),
            ring.scale(a2, ring.mul(z2, w)),
            ring.scale(a3, w2),
            ring.scale(a4, ring.mul(z, w2)),
            ring.scale(a6, ring.mul(w2, w)),
        )
    return w


def formal_add(curve, ring, w_coeffs, z1, z2):
    """
    Return F(z1, z2) for univariate series z1, z2 without constant terms.

    Args:
        curve (EllipticCurve):
            The curve.
        ring (_Series):
            The truncated series ring.
        w_coeffs (list):
            The series w(z).
        z1, z2 (list):
            The series to add.
    """
    a1, a2, a3, a4, a6 = curve.a_invariants

    # Slope: sum_n A_n (z2^n - z1^n)/(z2 - z1) through h_n
    lam = [0] * (ring.order + 1)
    h = ring.monomial(0)
    z2_power = ring.monomial(0)
    w1 = [0] * (ring.order + 1)
    z1_power = ring.monomial(0)
    for n in range(1, ring.order + 1):
        if n > 1:
            z2_power = ring.mul(z2_power, z2)
            h = ring.add(ring.mul(z1, h), z2_power)
        z1_power = ring.mul(z1_power, z1)
        if w_coeffs[n]:
            lam = ring.add(lam, ring.scale(w_coeffs[n], h))
            w1 = ring.add(w1, ring.scale(w_coeffs[n], z1_power))

    nu = ring.add(w1, ring.scale(-1, ring.mul(lam, z1)))
    lam2 = ring.mul(lam, lam)
    # Minus the z^2 coefficient of the cubic cut out by w = lam*z + nu
    numerator = ring.add(
        ring.scale(-a1, lam),
        ring.scale(-a3, lam2),
        ring.scale(-a2, nu),
        ring.scale(-2 * a4, ring.mul(lam, nu)),
        ring.scale(-3 * a6, ring.mul(lam2, nu)),
    )
    denominator = ring.add(
        ring.monomial(0),
        ring.scale(a2, lam),
        ring.scale(a4, lam2),
        ring.scale(a6, ring.mul(lam2, lam)),
    )
    z3 = ring.add(
        ring.scale(-1, z1),
        ring.scale(-1, z2),
        ring.mul(numerator, ring.inverse(denominator)),
    )
    w3 = ring.add(ring.mul(lam, z3), nu)

    # The sum is the inverse of the third intersection point
    inverse_den = ring.add(
        ring.monomial(0, -1), ring.scale(a1, z3), ring.scale(a3, w3)
    )
    return ring.mul(z3, ring.inverse(inverse_den))


@dataclass(frozen=True)
class FormalPSeries:
    """
    The multiplication-by-p series of the formal group of E mod p.

    Attributes:
        p (int):
            The prime.
        order (int):
            The truncation degree.
        coefficients (tuple):
            Coefficients over F_p of T^0, ..., T^order.
    """

    p: int
    order: int
    coefficients: tuple

    @property
    def first_nonzero(self):
        """The smallest index with a non-zero coefficient, None if none."""
        for i, c in enumerate(self.coefficients):
            if c:
                return i
        return None

    @property
    def is_series_in_frobenius(self):
        """True when every non-zero coefficient sits at a multiple of p."""
        return all(
            c == 0 for i, c in enumerate(self.coefficients) if i % self.p
        )

    @property
    def ordinary(self):
        """True when the coefficient of T^p is non-zero (height one)."""
        return self.coefficients[self.p] != 0

    def __str__(self):
        terms = [
            f"{c}*T^{i}" for i, c in enumerate(self.coefficients) if c
        ]
        return " + ".join(terms) + f" + O(T^{self.order + 1})"


def formal_multiple(curve, m, p, order):
    """
    Return the coefficients of [m](T) over F_p up to T^order.

    No reduction hypothesis is checked; the formal group law has integral
    coefficients for any Weierstrass model.

    Args:
        curve (EllipticCurve):
            The curve.
        m (int):
            The multiplier (m >= 1).
        p (int):
            The prime.
        order (int):
            The truncation degree.

    Returns:
        tuple:
            Coefficients of T^0, ..., T^order, reduced into [0, p).
    """
    if m < 1:
        raise HypothesisError(f"formal multiples need m >= 1, got {m}")
    # The slope at degree n needs w up to degree n + 1
    ring = _Series(p, order + 1)
    w_coeffs = _w_coefficients(curve, ring)
    t = ring.monomial(1)
    multiple = t
    for k in range(2, m + 1):
        multiple = formal_add(curve, ring, w_coeffs, multiple, t)
        logger.debug("[%d](T) mod %d computed", k, p)
    return tuple(multiple[: order + 1])


def formal_p_series(curve, p, order=None):
    """
    Compute [p](T) for the formal group of the reduction of E modulo p.

    Args:
        curve (EllipticCurve):
            The curve.
        p (int):
            A prime of good reduction.
        order (int, optional):
            The truncation degree, 2p + 1 by default.

    Returns:
        FormalPSeries:
            The truncated series.

    Raises:
        BadPrimeError:
            If p divides the discriminant.
        HypothesisError:
            If the order is below p + 1.
        RefutedStepError:
            If a non-zero coefficient sits at an index prime to p.
    """
    if not curve.is_good(p):
        raise BadPrimeError(f"{p} divides the discriminant of {curve}")
    order = 2 * p + 1 if order is None else order
    if order < p + 1:
        raise HypothesisError(
            f"truncation order {order} cannot certify the T^{p} pattern"
        )
    series = FormalPSeries(p, order, formal_multiple(curve, p, p, order))
    if not series.is_series_in_frobenius:
        raise RefutedStepError(
            f"[{p}](T) mod {p} is not a series in T^{p}: {series}"
        )
    return series
