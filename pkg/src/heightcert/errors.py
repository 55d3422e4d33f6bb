"""A module containing the error classes and graceful error handling.

Every error raised deliberately by heightcert derives from HeightCertError
and carries the process exit code of its class, so the command line front
end can map failures onto exit codes without inspecting messages.

Example usage:
    try:
        frobenius_element(field, 5)
    except HypothesisError as e:
        print(e.exit_code, e)
"""

import functools
import logging
import sys

logger = logging.getLogger(__name__)


class HeightCertError(Exception):
    """
    The base class of all heightcert errors.

    Attributes:
        exit_code (int):
            The process exit code used by the command line interface.
    """

    exit_code = 1


class ParseError(HeightCertError):
    """
    An input stanza, element or point literal could not be parsed.

    Attributes:
        line (int):
            The 1-based line of the offending input, None if unknown.
        column (int):
            The 1-based column of the offending input, None if unknown.
    """

    exit_code = 2

    def __init__(self, message, line=None, column=None):
        """
        Initialise the error.

        Args:
            message (str):
                What went wrong.
            line (int, optional):
                The 1-based line number.
            column (int, optional):
                The 1-based column number.
        """
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (
                f", column {column}" if column is not None else ""
            )
            message = f"{where}: {message}"
        super().__init__(message)


class PointNotOnCurveError(ParseError):
    """
    A point literal does not satisfy the Weierstrass equation.

    Attributes:
        residual (FieldElement):
            The exact value of lhs - rhs of the Weierstrass equation.
    """

    def __init__(self, residual, line=None, column=None):
        self.residual = residual
        super().__init__(
            f"point is not on the curve (residual {residual})",
            line=line,
            column=column,
        )


class HypothesisError(HeightCertError):
    """A hypothesis of an operation is violated by its inputs."""

    exit_code = 3


class FieldMismatchError(HypothesisError):
    """Two operands live over different fields or curves."""


class UnsupportedFieldError(HypothesisError):
    """The field is outside the supported families."""


class ReductionPoleError(HypothesisError):
    """An element with negative valuation was reduced modulo a prime."""


class BadPrimeError(HypothesisError):
    """The prime divides the discriminant of the curve."""


class BudgetExceededError(HypothesisError):
    """An enumeration or search exceeded its configured budget."""


class NoAdmissiblePrimeError(HypothesisError):
    """No prime in the search window satisfies the selection conditions."""


class CongruenceError(HypothesisError):
    """
    Two points are not congruent modulo a prime where they must be.

    Attributes:
        prime (PrimeIdeal):
            The prime where the congruence fails.
    """

    def __init__(self, prime, message=None):
        self.prime = prime
        super().__init__(
            message or f"points are not congruent modulo {prime!r}"
        )


class PrecisionCapError(HeightCertError):
    """An interval comparison stayed undecided up to the precision cap."""

    exit_code = 4


class ToleranceUnreachableError(PrecisionCapError):
    """The requested tolerance needs more doublings than allowed."""


class RefutedStepError(HeightCertError):
    """
    A checked step of a proof chain failed.

    A refuted step always signals an implementation defect, since every
    check mirrors an inequality or congruence that holds unconditionally.
    """

    exit_code = 5


def error_handler(func):
    """
    Wrap a command in a try/except block to report errors and exit.

    heightcert errors are printed as a styled line on stderr and the process
    exits with the code of the error class. KeyboardInterrupt and unexpected
    exceptions are re-raised untouched.

    Args:
        func (function):
            The function to wrap.
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        """Wrap the function."""
        try:
            return func(*args, **kwargs)
        except KeyboardInterrupt:
            # Re-raise the KeyboardInterrupt to ensure it's not caught here
            raise
        except HeightCertError as e:
            # Nested import to avoid circular dependencies
            from heightcert.utils import print_styled

            logger.debug("%s failed", func.__name__, exc_info=True)
            print_styled(
                [("class:error", f"ERROR@{func.__name__}: "), ("", str(e))],
                file=sys.stderr,
            )
            sys.exit(e.exit_code)

    return wrapper

