"""Canonical heights with rigorous error bounds and comparison constants.

The x-map canonical height is the limit of 4^-N h(x(2^N P)). Writing
D_j = h(x(2^(j+1) P)) - 4 h(x(2^j P)) it telescopes to

    h(x(P)) + sum_{j < N} 4^-(j+1) D_j  +  tail,  |tail| <= C_dup 4^-N / 3,

where C_dup bounds |h(x(2Q)) - 4 h(x(Q))| for every Q. Each D_j is a sum of
local terms log max(|F|_v, |G|_v) - 4 log max(|X|_v, |Z|_v) for the doubling
forms F, G, and each local term is invariant under rescaling (X, Z). The
iterates are therefore followed place by place with a rescaling suited to
each place: archimedean coordinates as interval enclosures normalised by
exact powers of two, and finite places dividing Res(F, G) p-adically with
exact valuations. Every other finite place contributes nothing.

The certifier's height is the psi-map height for psi = [1 : x : y], equal to
3/2 times the x-map height; the constant relating h(psi(P)) to it is
assembled from C_dup and an explicit comparison between h(psi(P)) and
3/2 h(x(P)).

Example usage:
    curve = EllipticCurve(0, 0, 1, -1, 0)
    result = canonical_height(curve.point(0, 0), tolerance=1e-10)
    print(result)                               # about 0.0511114082
    bound = height_comparison_bound(curve)
    print(bound.B)
"""

import functools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from heightcert.errors import (
    HypothesisError,
    RefutedStepError,
    ToleranceUnreachableError,
)
from heightcert.heights import weil_height, weil_height_parts
from heightcert.intervals import (
    LogSum,
    format_interval,
    interval_context,
    iv_max,
    refine,
    to_interval,
)
from heightcert.numfield import FieldElement, galois_group, is_ramified
from heightcert.places import archimedean_places, primes_above, valuation

logger = logging.getLogger(__name__)

NORMALIZATIONS = ("x", "psi")


def doubling_forms(curve):
    """
    Return the doubling forms F, G with x(2P) = F(x, 1) / G(x, 1).

    Returns:
        tuple:
            Integer coefficients of X^(4-i) Z^i for F and for G.
    """
    F = (1, 0, -curve.b4, -2 * curve.b6, -curve.b8)
    G = (0, 4, curve.b2, 2 * curve.b4, curve.b6)
    return F, G


def _evaluate_form(coeffs, X, Z):
    """Evaluate a binary quartic form (coefficients of X^(4-i) Z^i)."""
    X2, Z2 = X * X, Z * Z
    monomials = (X2 * X2, X2 * X * Z, X2 * Z2, X * Z2 * Z, Z2 * Z2)
    total = None
    for c, mono in zip(coeffs, monomials):
        if c:
            term = mono * c
            total = term if total is None else total + term
    return total


@functools.lru_cache(maxsize=64)
def doubling_resultant(curve):
    """Return Res(F, G) as an integer."""
    x = sympy.Symbol("x")
    F, G = doubling_forms(curve)
    f = sum(c * x ** (4 - i) for i, c in enumerate(F))
    g = sum(c * x ** (4 - i) for i, c in enumerate(G))
    return int(sympy.resultant(f, g, x))


@functools.lru_cache(maxsize=64)
def bezout_forms(curve):
    """
    Solve f_i F + g_i G = X^7 (i = 1) and Z^7 (i = 2) over Q.

    Returns:
        list:
            Two pairs (f_i, g_i) of cubic forms, each a tuple of Fraction
            coefficients of X^(3-k) Z^k.
    """
    F, G = doubling_forms(curve)
    matrix = sympy.zeros(8, 8)
    for k in range(4):
        for i in range(5):
            matrix[i + k, k] = F[i]
            matrix[i + k, 4 + k] = G[i]
    solutions = []
    for target in (0, 7):
        rhs = sympy.zeros(8, 1)
        rhs[target] = 1
        sol = matrix.LUsolve(rhs)
        values = [Fraction(int(v.p), int(v.q)) for v in sol]
        solutions.append((tuple(values[:4]), tuple(values[4:])))
    return solutions


@dataclass(frozen=True)
class DuplicationBound:
    """
    Bounds -lower <= h(x(2P)) - 4 h(x(P)) <= upper for all P.

    Attributes:
        upper (LogSum):
            log max(||F||_1, ||G||_1).
        lower (LogSum):
            log max_i(||f_i||_1 + ||g_i||_1) plus the finite correction
            sum_l max_i v_l(R_i) log l, R_i the denominators of the Bezout
            forms.
    """

    upper: LogSum
    lower: LogSum

    def enclose(self, ctx):
        """Enclose C_dup = max(upper, lower)."""
        return iv_max(ctx, self.upper.enclose(ctx), self.lower.enclose(ctx))


@functools.lru_cache(maxsize=64)
def duplication_bound(curve):
    """Return the DuplicationBound of the x-map for a curve."""
    F, G = doubling_forms(curve)
    upper = LogSum.log_of(
        max(sum(abs(c) for c in F), sum(abs(c) for c in G))
    )
    norms = []
    denominators = []
    for f_i, g_i in bezout_forms(curve):
        norms.append(sum(abs(c) for c in f_i + g_i))
        denominators.append(math.lcm(*(c.denominator for c in f_i + g_i)))
    lower = LogSum.log_of(max(norms))
    primes = set()
    for R in denominators:
        primes |= set(sympy.primefactors(R))
    lower = lower + LogSum(
        {
            ell: max(sympy.multiplicity(ell, R) for R in denominators)
            for ell in primes
        }
    )
    return DuplicationBound(upper, lower)


@dataclass(frozen=True)
class HeightComparisonBound:
    """
    Explicit constants relating Weil and canonical psi-heights.

    Attributes:
        curve (EllipticCurve):
            The curve.
        embedding (str):
            The projective embedding, "psi = [1 : x : y]".
        c_dup_x (ivmpf):
            sup |h(x(2P)) - 4 h(x(P))|.
        c_xy (ivmpf):
            sup |h(psi(P)) - 3/2 h(x(P))|.
        c_dup_psi (ivmpf):
            sup |h(psi(2P)) - 4 h(psi(P))| <= 3/2 c_dup_x + 5 c_xy.
        c_psi (ivmpf):
            sup |h(psi(P)) - h^_psi(P)| <= c_dup_psi / 3.
        B (ivmpf):
            2 c_psi + log 2.
    """

    curve: object
    embedding: str
    c_dup_x: object
    c_xy: object
    c_dup_psi: object
    c_psi: object
    B: object

    def to_json(self, digits=17):
        return {
            "embedding": self.embedding,
            "C_dup_x": format_interval(self.c_dup_x, digits),
            "c_xy": format_interval(self.c_xy, digits),
            "C_dup_psi": format_interval(self.c_dup_psi, digits),
            "C_psi": format_interval(self.c_psi, digits),
            "B": format_interval(self.B, digits),
        }


def comparison_constant(curve, ctx):
    """
    Enclose c_xy with |h(psi(P)) - 3/2 h(x(P))| <= c_xy.

    With alpha = |a1| + |a3|, beta = 1 + |a2| + |a4| + |a6| and
    gamma = 1 + sum |a_i|: |y| <= c1 max(1, |x|)^(3/2) for
    c1 = (alpha + sqrt(alpha^2 + 4 beta)) / 2, and
    max(1, |x|)^3 <= gamma max(1, |x|, |y|)^2 at archimedean places, while
    both comparisons hold with constant 1 at finite places.
    """
    a1, a2, a3, a4, a6 = (abs(a) for a in curve.a_invariants)
    alpha = a1 + a3
    beta = 1 + a2 + a4 + a6
    gamma = 1 + a1 + a2 + a3 + a4 + a6
    c1 = (alpha + ctx.sqrt(ctx.mpf(alpha * alpha + 4 * beta))) / 2
    c1 = iv_max(ctx, c1, ctx.mpf(1))
    return iv_max(ctx, ctx.ln(c1), ctx.ln(ctx.mpf(gamma)) / 2)


@functools.lru_cache(maxsize=64)
def _comparison_bound(curve, precision):
    ctx = interval_context(precision)
    c_dup_x = duplication_bound(curve).enclose(ctx)
    c_xy = comparison_constant(curve, ctx)
    c_dup_psi = c_dup_x * 3 / 2 + c_xy * 5
    c_psi = c_dup_psi / 3
    B = c_psi * 2 + ctx.ln(2)
    return HeightComparisonBound(
        curve, "psi = [1 : x : y]", c_dup_x, c_xy, c_dup_psi, c_psi, B
    )


def height_comparison_bound(curve, precision=80):
    """
    Return the explicit constants C_psi and B = 2 C_psi + log 2.

    Args:
        curve (EllipticCurve):
            The curve.
        precision (int):
            The working precision in bits.

    Returns:
        HeightComparisonBound:
            The constants as interval enclosures.
    """
    return _comparison_bound(curve, precision)


@dataclass
class CanonicalHeightResult:
    """
    A canonical height with a rigorous enclosure.

    Attributes:
        value (ivmpf):
            An interval containing the canonical height.
        error (float):
            Half the width of the enclosure (tail bound included).
        doublings (int):
            The number of doublings N.
        normalization (str):
            "x" or "psi".
        torsion (bool):
            True when the point was certified torsion and value is 0.
        precision (int):
            The precision that produced the enclosure.
    """

    value: object
    error: float
    doublings: int
    normalization: str
    torsion: bool = False
    precision: int = 0
    witness: dict = field(default_factory=dict)

    @property
    def lower(self):
        return self.value.a

    @property
    def upper(self):
        return self.value.b

    def to_json(self, digits=17):
        return {
            "value": format_interval(self.value, digits),
            "error": self.error,
            "doublings": self.doublings,
            "normalization": self.normalization,
            "torsion": self.torsion,
            "precision": self.precision,
        }

    def __str__(self):
        if self.torsion:
            return "0"
        return format_interval(self.value, 12)


class _PrecisionExhausted(Exception):
    """The p-adic working precision ran out."""


def _capped_valuation(element, prime, cap):
    """Return min(v_P(element), cap) for an integral element."""
    field_, p = prime.field, prime.p
    if all(c == 0 for c in element.num):
        return cap
    count = 0
    current = element
    while count < cap:
        shifted = current * prime.gamma
        if any(c % p for c in shifted.num):
            return count
        current = FieldElement(field_, tuple(c // p for c in shifted.num))
        count += 1
    return cap


def _reduce_mod(element, modulus):
    return FieldElement(
        element.field, tuple(c % modulus for c in element.num)
    )


def _finite_sum(prime, X, Z, forms, steps, precision):
    """
    Follow the doubling iterates at one finite place.

    Returns:
        Fraction:
            sum_j 4^-(j+1) s_j where s_j is the valuation dropped at step j;
            the place contributes -(f/n) times this times log p.

    Raises:
        _PrecisionExhausted:
            If precision digits of p are not enough.
    """
    F, G = forms
    p, e = prime.p, prime.e
    one_over_p = Fraction(1, p)

    # Exact normalisation of the starting pair
    s0 = min(valuation(X, prime), valuation(Z, prime))
    if s0:
        lift = (prime.gamma * one_over_p) ** s0
        X, Z = X * lift, Z * lift

    digits = precision
    total = Fraction(0)
    for j in range(steps):
        modulus = p**digits
        X, Z = _reduce_mod(X, modulus), _reduce_mod(Z, modulus)
        Fv = _evaluate_form(F, X, Z)
        Gv = _evaluate_form(G, X, Z)
        Fv, Gv = _reduce_mod(Fv, modulus), _reduce_mod(Gv, modulus)
        cap = e * digits
        s = min(
            _capped_valuation(Fv, prime, cap),
            _capped_valuation(Gv, prime, cap),
        )
        if s >= cap or s >= digits:
            raise _PrecisionExhausted()
        if s:
            gamma_power = prime.gamma**s
            scale = p**s
            Fv = FieldElement(
                Fv.field,
                tuple(c // scale for c in (Fv * gamma_power).num),
            )
            Gv = FieldElement(
                Gv.field,
                tuple(c // scale for c in (Gv * gamma_power).num),
            )
            digits -= s
        total += Fraction(s, 4 ** (j + 1))
        X, Z = Fv, Gv
    return total


def _finite_part(point, steps):
    """Exact LogSum of the finite contributions to sum 4^-(j+1) D_j."""
    curve, field_ = point.curve, point.field
    forms = doubling_forms(curve)
    x = point.x
    X = FieldElement(field_, x.num)
    Z = field_.element(x.den)
    n = field_.degree
    result = LogSum()
    for ell in sympy.primefactors(abs(doubling_resultant(curve))):
        for prime in primes_above(field_, ell):
            digits = 2 * steps + 16
            while True:
                try:
                    drop = _finite_sum(prime, X, Z, forms, steps, digits)
                    break
                except _PrecisionExhausted:
                    logger.debug(
                        "p-adic precision %d exhausted at %r, doubling",
                        digits,
                        prime,
                    )
                    digits *= 2
            if drop:
                result = result + LogSum({ell: -Fraction(prime.f, n) * drop})
    return result


def _archimedean_part(point, steps, ctx):
    """Enclose the archimedean contributions to sum 4^-(j+1) D_j."""
    F, G = doubling_forms(point.curve)
    x = point.x
    numerator = FieldElement(point.field, x.num)
    total = ctx.mpf(0)
    for place in archimedean_places(point.field):
        X = place.embed(numerator, ctx)
        Z = ctx.mpf(x.den)
        scale_exp = ctx.mag(iv_max(ctx, abs(X), abs(Z)).b)
        scale = ctx.ldexp(ctx.mpf(1), -scale_exp)
        X, Z = X * scale, Z * scale
        log_size = ctx.ln(iv_max(ctx, abs(X), abs(Z)))
        local = ctx.mpf(0)
        for j in range(steps):
            Fv = _evaluate_form(F, X, Z)
            Gv = _evaluate_form(G, X, Z)
            size = iv_max(ctx, abs(Fv), abs(Gv))
            if not size.a > 0:
                # Not separated from zero at this precision
                return None
            local += (ctx.ln(size) - 4 * log_size) / 4 ** (j + 1)
            scale = ctx.ldexp(ctx.mpf(1), -ctx.mag(size.b))
            X, Z = Fv * scale, Gv * scale
            log_size = ctx.ln(iv_max(ctx, abs(X), abs(Z)))
        total += to_interval(ctx, place.weight) * local
    return total


def doublings_needed(curve, tolerance, max_doublings, precision=80):
    """
    Return the smallest N with C_dup 4^-N / 3 <= tolerance / 2.

    Raises:
        ToleranceUnreachableError:
            If N would exceed max_doublings.
    """
    ctx = interval_context(precision)
    c_dup = duplication_bound(curve).enclose(ctx)
    bound = float(c_dup.b)
    steps = 0
    while bound / (3 * 4**steps) > tolerance / 2:
        steps += 1
        if steps > max_doublings:
            raise ToleranceUnreachableError(
                f"tolerance {tolerance:g} needs more than {max_doublings} "
                "doublings"
            )
    return steps, c_dup


def _torsion_certificate(point, budget):
    """Run the Frobenius torsion test at the smallest usable prime."""
    # Deferred import: ellcurve imports this module
    from heightcert.ellcurve import torsion_test

    for p in sympy.primerange(3, 200):
        if point.curve.is_good(p) and not is_ramified(point.field, p):
            if p > budget:
                break
            is_torsion, witness = torsion_test(point, p, budget)
            if is_torsion:
                return {"p": p, "r": witness}
            return None
    return None


def canonical_height(
    point,
    normalization="x",
    tolerance=1e-8,
    precision=80,
    precision_cap=4096,
    max_doublings=60,
    budget=10**6,
    check_torsion=True,
):
    """
    Compute a canonical height with a rigorous enclosure.

    Args:
        point (ECPoint):
            The point P over a supported field.
        normalization (str):
            "x" for lim 4^-n h(x(2^n P)), "psi" for lim 4^-n h(psi(2^n P)).
        tolerance (float):
            The target half width of the enclosure.
        precision (int):
            The starting precision in bits.
        precision_cap (int):
            The largest precision used.
        max_doublings (int):
            The largest number of doublings allowed.
        budget (int):
            The point counting budget of the torsion test.
        check_torsion (bool):
            Run the Frobenius torsion test first.

    Returns:
        CanonicalHeightResult:
            The enclosure; exactly 0 for certified torsion points.

    Raises:
        ToleranceUnreachableError:
            If the tolerance needs too many doublings.
        PrecisionCapError:
            If the archimedean iterates cannot be resolved.
    """
    if normalization not in NORMALIZATIONS:
        raise HypothesisError(f"unknown normalization {normalization!r}")
    ctx = interval_context(precision)
    if point.is_zero():
        return CanonicalHeightResult(ctx.mpf(0), 0.0, 0, normalization,
                                     torsion=True, precision=precision)
    if check_torsion:
        witness = _torsion_certificate(point, budget)
        if witness is not None:
            logger.info("P = %s certified torsion (%s)", point, witness)
            return CanonicalHeightResult(
                ctx.mpf(0), 0.0, 0, normalization, torsion=True,
                precision=precision, witness=witness,
            )

    steps, c_dup = doublings_needed(
        point.curve, tolerance, max_doublings, precision
    )
    base_arch, base_fin = weil_height_parts(point.x_point())
    finite = _finite_part(point, steps) + base_fin

    def compute(ctx):
        arch = _archimedean_part(point, steps, ctx)
        if arch is None:
            return ctx.mpf((-(2**64), 2**64))
        partial = base_arch(ctx) + arch + finite.enclose(ctx)
        tail = c_dup / (3 * 4**steps)
        if normalization == "psi":
            partial = partial * 3 / 2
            tail = tail * 3 / 2
        return partial + ctx.mpf((-tail.b, tail.b))

    value, prec = refine(
        compute, precision, precision_cap, 2 * tolerance, "canonical height"
    )
    result = CanonicalHeightResult(
        value, float(value.delta) / 2, steps, normalization, precision=prec
    )
    logger.debug("h^_%s(%s) = %s after %d doublings", normalization, point,
                 result, steps)
    if normalization == "psi":
        _cross_check_psi(point, result, prec)
    return result


def _cross_check_psi(point, result, precision):
    """Check |h(psi(2P))/4 - h^_psi(P)| <= C_psi/4 + error exactly."""
    bound = height_comparison_bound(point.curve, precision)
    doubled = point + point
    value = weil_height(doubled.psi(), precision) / 4
    ctx = interval_context(precision)
    slack = bound.c_psi / 4 + ctx.mpf(result.error)
    gap = value - result.value
    if gap.a > slack.b or gap.b < -slack.b:
        raise RefutedStepError(
            f"psi-height cross-check failed for {point}: "
            f"{format_interval(gap)} vs {format_interval(slack)}"
        )


def height_pairing(first, second, **options):
    """
    Enclose the canonical height pairing <P, Q>.

    <P, Q> = (h^(P + Q) - h^(P) - h^(Q)) / 2, so h^(P) = <P, P>.

    Args:
        first (ECPoint):
            The point P.
        second (ECPoint):
            The point Q.
        **options:
            Passed to canonical_height.

    Returns:
        ivmpf:
            The enclosure.
    """
    total = canonical_height(first + second, **options).value
    return (
        total
        - canonical_height(first, **options).value
        - canonical_height(second, **options).value
    ) / 2


def combination_height(points, coeffs, **options):
    """
    Enclose h^(sum_i c_i P_i) through the height pairing.

    The combination itself is never formed, so its coordinates never need
    to be materialised.
    """
    pairs = {}
    total = None
    for i, (P, c) in enumerate(zip(points, coeffs)):
        for j, (Q, d) in enumerate(zip(points, coeffs)):
            if not c or not d:
                continue
            key = (min(i, j), max(i, j))
            if key not in pairs:
                if i == j:
                    pairs[key] = canonical_height(P, **options).value
                else:
                    pairs[key] = height_pairing(P, Q, **options)
            term = pairs[key] * (c * d)
            total = term if total is None else total + term
    if total is None:
        precision = options.get("precision", 80)
        return interval_context(precision).mpf(0)
    return total


def parallelogram_check(points, tolerance=1e-8, **options):
    """
    Check h^(x_1 + ... + x_t) <= t (h^(x_1) + ... + h^(x_t)) + tolerance.

    Args:
        points (list):
            The points x_i, at least one, on a common curve.
        tolerance (float):
            The tolerance of each canonical height.

    Returns:
        bool:
            True when the inequality holds within the combined tolerance.
    """
    if not points:
        raise HypothesisError("the parallelogram law needs a point")
    options["tolerance"] = tolerance
    total = points[0]
    for P in points[1:]:
        total = total + P
    t = len(points)
    lhs = canonical_height(total, **options).value
    rhs = sum(
        (canonical_height(P, **options).value for P in points[1:]),
        canonical_height(points[0], **options).value,
    ) * t
    slack = (t * t + 1) * tolerance
    return bool(lhs.a <= rhs.b + slack)


def galois_invariance_check(point, tolerance=1e-8, **options):
    """
    Check |h^(sigma P) - h^(P)| <= 2 tolerance for every sigma.

    Returns:
        bool:
            True when every conjugate agrees within tolerance.
    """
    options["tolerance"] = tolerance
    reference = canonical_height(point, **options).value
    for sigma in galois_group(point.field):
        if sigma.is_identity():
            continue
        value = canonical_height(point.conjugate(sigma), **options).value
        gap = value - reference
        if gap.a > 2 * tolerance or gap.b < -2 * tolerance:
            logger.warning("h^ not invariant under %s for %s", sigma, point)
            return False
    return True
