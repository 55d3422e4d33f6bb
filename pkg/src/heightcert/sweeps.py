"""Property sweeps over the corpus.

Each sweep walks curves, fields and primes, records every tuple it checked
and every violation, and draws an optional progress bar.

Example usage:
    result = hasse_sweep(CURVES.values(), bound=200)
    print(result.checked, result.violations)
    result = annihilation_sweep(["37a"], ["Q(sqrt 5)"], bound=50)
"""

import logging
from dataclasses import dataclass, field

import sympy

from heightcert.corpus import CURVES, corpus_points
from heightcert.ellcurve import frobenius_annihilates, frobenius_poly
from heightcert.errors import RefutedStepError
from heightcert.numfield import is_ramified
from heightcert.parsing import parse_field
from heightcert.places import primes_above
from heightcert.progress import ProgressBar

logger = logging.getLogger(__name__)


@dataclass
class SweepResult:
    """
    The outcome of a sweep.

    Attributes:
        name (str):
            The sweep.
        checked (int):
            The number of tuples checked.
        violations (list):
            JSON-compatible records of every failure.
    """

    name: str
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {"sweep": self.name, "checked": self.checked,
                "violations": self.violations}


def hasse_sweep(curves, bound=200, budget=10**6, progress=False):
    """
    Check |a_p| <= 2 sqrt(p) and |a_i| <= 4p at every good p <= bound.

    Args:
        curves (iterable):
            EllipticCurve objects.
        bound (int):
            The largest prime.
        budget (int):
            The point counting budget.
        progress (bool):
            Show a progress bar.
    """
    curves = list(curves)
    primes = list(sympy.primerange(2, bound + 1))
    result = SweepResult("hasse")
    with ProgressBar(len(curves) * len(primes), "Hasse bound",
                     enabled=progress) as bar:
        for curve in curves:
            for p in primes:
                bar.advance()
                if not curve.is_good(p):
                    continue
                result.checked += 1
                try:
                    data = frobenius_poly(curve, p, budget)
                except RefutedStepError as e:
                    result.violations.append(
                        {"curve": str(curve), "p": p, "error": str(e)}
                    )
                    continue
                # a_p^2 <= 4p is the exact form of |a_p| <= 2 sqrt(p)
                if data.a_p * data.a_p > 4 * p or any(
                    abs(c) > 4 * p for c in data.coefficients
                ):
                    result.violations.append(
                        {"curve": str(curve), "p": p, "a_p": data.a_p}
                    )
    logger.info("Hasse sweep: %d checked, %d violations", result.checked,
                len(result.violations))
    return result


def annihilation_sweep(labels, fields, bound=50, budget=10**6,
                       exact_limit=100, progress=False):
    """
    Check that Phi_p(sigma)P reduces to O at every prime above p.

    Args:
        labels (iterable):
            Corpus curve labels; all their corpus points are used.
        fields (iterable):
            Field literals.
        bound (int):
            The largest prime.
        budget (int):
            The point counting budget.
        exact_limit (int):
            Primes above this use residue-field arithmetic.
        progress (bool):
            Show a progress bar.
    """
    labels = list(labels)
    fields = [parse_field(text) for text in fields]
    primes = list(sympy.primerange(2, bound + 1))
    result = SweepResult("annihilation")
    total = len(labels) * len(fields) * len(primes)
    with ProgressBar(total, "Frobenius annihilation",
                     enabled=progress) as bar:
        for label in labels:
            curve = CURVES[label]
            for number_field in fields:
                points = corpus_points(label, number_field)
                for p in primes:
                    bar.advance()
                    if not curve.is_good(p) or is_ramified(number_field, p):
                        continue
                    for point, _ in points:
                        for prime in primes_above(number_field, p):
                            result.checked += 1
                            if not frobenius_annihilates(
                                point, p, prime, budget, exact_limit
                            ):
                                result.violations.append(
                                    {"curve": label,
                                     "field": str(number_field),
                                     "point": str(point), "p": p,
                                     "prime": str(prime)}
                                )
    logger.info("annihilation sweep: %d checked, %d violations",
                result.checked, len(result.violations))
    return result

