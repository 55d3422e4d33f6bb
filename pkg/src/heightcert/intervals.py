"""Interval arithmetic helpers built on mpmath's interval contexts.

Every real number heightcert reports is an mpmath interval guaranteed to
contain the exact value. Interval comparisons can be undecided, in which
case the computation is repeated at doubled precision until the comparison
is decided or the precision cap is reached.

Logarithms of rationals that arise at finite places are kept exactly as
LogSum objects (rational combinations of logarithms of primes) and only
enclosed in an interval when they meet archimedean quantities.

Example usage:
    ctx = interval_context(80)
    third = to_interval(ctx, Fraction(1, 3))
    holds, prec = decide(lambda ctx: ctx.ln(2) > third, 80, 4096)
"""

import functools
import logging
from fractions import Fraction

import sympy
from mpmath.ctx_iv import MPIntervalContext

from heightcert.errors import PrecisionCapError

logger = logging.getLogger(__name__)


@functools.lru_cache(maxsize=None)
def interval_context(precision):
    """
    Return the interval context working at the given precision.

    Contexts are cached per precision and never have their precision
    changed afterwards, so they can be shared freely.

    Args:
        precision (int):
            The working precision in bits.

    Returns:
        MPIntervalContext:
            The interval context.
    """
    ctx = MPIntervalContext()
    ctx.prec = precision
    return ctx


def to_interval(ctx, value):
    """
    Enclose an exact number in an interval.

    Args:
        ctx (MPIntervalContext):
            The interval context.
        value (int/Fraction/str/ivmpf):
            The value to enclose.

    Returns:
        ivmpf:
            An interval containing value.
    """
    if isinstance(value, Fraction):
        return ctx.mpf(value.numerator) / value.denominator
    return ctx.convert(value)


def iv_max(ctx, first, second):
    """
    Return an interval enclosing the maximum of two real intervals.

    Args:
        ctx (MPIntervalContext):
            The interval context.
        first (ivmpf):
            The first interval.
        second (ivmpf):
            The second interval.

    Returns:
        ivmpf:
            The enclosure of max(first, second).
    """
    lower = first.a if first.a > second.a else second.a
    upper = first.b if first.b > second.b else second.b
    return ctx.mpf((lower, upper))


def iv_max_all(ctx, values):
    """Return the enclosure of the maximum of a non-empty iterable."""
    values = iter(values)
    best = next(values)
    for value in values:
        best = iv_max(ctx, best, value)
    return best


def width(value):
    """Return the width of a real interval as a float (rounded up)."""
    return float(value.delta)


def is_positive(value):
    """Return True/False when the sign is decided, None otherwise."""
    return value > 0


def format_interval(value, digits=17):
    """
    Format an interval for reports.

    Args:
        value (ivmpf):
            The interval.
        digits (int):
            The number of significant digits.

    Returns:
        str:
            The "[lower, upper]" rendering.
    """
    return value.ctx.nstr(value, digits)


def decide(predicate, precision, cap, what="comparison"):
    """
    Evaluate an interval predicate, doubling precision until it decides.

    Args:
        predicate (function):
            Called with an interval context, returns True, False or None
            (undecided).
        precision (int):
            The starting precision in bits.
        cap (int):
            The largest precision allowed.
        what (str):
            A description used in log and error messages.

    Returns:
        tuple:
            The decided boolean and the precision that decided it.

    Raises:
        PrecisionCapError:
            If the predicate is still undecided at the cap.
    """
    prec = precision
    while True:
        outcome = predicate(interval_context(prec))
        if outcome is not None:
            return bool(outcome), prec
        if prec >= cap:
            raise PrecisionCapError(
                f"{what} undecidable at precision cap {cap} bits"
            )
        logger.debug("%s undecided at %d bits, doubling", what, prec)
        prec = min(2 * prec, cap)


def refine(compute, precision, cap, tolerance, what="value"):
    """
    Evaluate an interval quantity until its width is below a tolerance.

    Args:
        compute (function):
            Called with an interval context, returns an interval.
        precision (int):
            The starting precision in bits.
        cap (int):
            The largest precision allowed.
        tolerance (float):
            The largest acceptable width.
        what (str):
            A description used in log and error messages.

    Returns:
        tuple:
            The interval and the precision that produced it.

    Raises:
        PrecisionCapError:
            If the width is still too large at the cap.
    """
    prec = precision
    while True:
        value = compute(interval_context(prec))
        if width(value) <= tolerance:
            return value, prec
        if prec >= cap:
            raise PrecisionCapError(
                f"{what} not resolved to {tolerance:g} at {cap} bits"
            )
        logger.debug("%s too wide at %d bits, doubling", what, prec)
        prec = min(2 * prec, cap)


class LogSum:
    """
    An exact rational combination of logarithms of primes.

    LogSum values represent quantities such as (3/2)·log 5 - log 2 without
    rounding; they are what finite places contribute to heights and
    distances.

    Attributes:
        terms (dict):
            Maps a prime to its (non-zero) Fraction coefficient.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        """
        Initialise the sum.

        Args:
            terms (dict, optional):
                Maps a positive integer to its coefficient. Non-prime keys
                are factored.
        """
        self.terms = {}
        for base, coeff in (terms or {}).items():
            self._accumulate(base, Fraction(coeff))

    def _accumulate(self, base, coeff):
        """Add coeff·log(base) in place (construction only)."""
        if coeff == 0 or base == 1:
            return
        for prime, mult in sympy.factorint(base).items():
            total = self.terms.get(prime, 0) + coeff * mult
            if total:
                self.terms[prime] = total
            else:
                self.terms.pop(prime, None)

    @classmethod
    def log_of(cls, value):
        """Return log|value| for a non-zero rational value."""
        value = Fraction(value)
        if value == 0:
            raise ValueError("log of zero")
        terms = {}
        num, den = abs(value.numerator), value.denominator
        if num != 1:
            terms[num] = 1
        result = cls(terms)
        if den != 1:
            result = result - cls({den: 1})
        return result

    def __add__(self, other):
        result = LogSum()
        result.terms = dict(self.terms)
        for prime, coeff in other.terms.items():
            total = result.terms.get(prime, 0) + coeff
            if total:
                result.terms[prime] = total
            else:
                result.terms.pop(prime, None)
        return result

    def __neg__(self):
        result = LogSum()
        result.terms = {p: -c for p, c in self.terms.items()}
        return result

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        """Return factor·self for a rational factor."""
        factor = Fraction(factor)
        result = LogSum()
        if factor:
            result.terms = {p: c * factor for p, c in self.terms.items()}
        return result

    def __eq__(self, other):
        return isinstance(other, LogSum) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def is_zero(self):
        """Return True if the sum is exactly zero."""
        return not self.terms

    def enclose(self, ctx):
        """
        Enclose the sum in an interval.

        Args:
            ctx (MPIntervalContext):
                The interval context.

        Returns:
            ivmpf:
                An interval containing the exact value.
        """
        total = ctx.mpf(0)
        for prime, coeff in self.terms.items():
            total += to_interval(ctx, coeff) * ctx.ln(prime)
        return total

    def to_json(self):
        """Return a JSON-compatible mapping prime -> "num/den"."""
        return {str(p): str(c) for p, c in sorted(self.terms.items())}

    @classmethod
    def from_json(cls, data):
        """Rebuild a LogSum from to_json output."""
        result = cls()
        result.terms = {int(p): Fraction(c) for p, c in data.items()}
        return result

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"({c})*log({p})" for p, c in sorted(self.terms.items())
        )
