"""Shared click options and input resolution for the heightcert commands.

Curves are given as a corpus label ("37a"), a stanza file holding a curve
line, or an inline curve body ("a4=1 a6=1"). Points are given inline
("x=3 y=5", "O") or as a stanza file; fields are literals ("Q(sqrt 5)").

Example usage:
    @click.command("canonical")
    @point_options
    @numeric_options
    @error_handler
    def canonical(**options):
        config = RunConfig.from_options(command="canonical", **options)
        point = resolve_point(options["field"], options["curve"],
                              options["point"])
"""

import json
import logging
import os

import click

from heightcert.corpus import resolve_curve
from heightcert.errors import ParseError
from heightcert.parsing import (
    parse_curve,
    parse_field,
    parse_inputs,
    parse_point,
)
from heightcert.utils import print_record

logger = logging.getLogger(__name__)


def field_option(func):
    return click.option(
        "--field",
        default="Q",
        show_default=True,
        help="The field L, e.g. 'Q(sqrt 5)' or 'Q(zeta 9)'.",
    )(func)


def curve_option(func):
    return click.option(
        "--curve",
        required=True,
        help="A corpus label, a stanza file or an inline curve body.",
    )(func)


def prime_option(func):
    return click.option(
        "--p", "p", type=click.IntRange(min=2), help="The prime p."
    )(func)


def point_options(func):
    """Attach --field, --curve and --point."""
    func = click.option(
        "--point",
        required=True,
        help="An inline point body ('x=3 y=5', 'O') or a stanza file.",
    )(func)
    return field_option(curve_option(func))


def numeric_options(func):
    """Attach the precision and canonical height tunables."""
    options = [
        click.option("--tol", "tolerance", type=click.FloatRange(min=0,
                     min_open=True), help="Canonical height tolerance."),
        click.option("--precision", type=click.IntRange(min=16),
                     help="Starting precision in bits."),
        click.option("--precision-cap", type=click.IntRange(min=16),
                     help="Largest precision in bits."),
        click.option("--max-doublings", type=click.IntRange(min=1),
                     help="Largest number of doublings."),
        click.option("--prime-budget", "counting_budget",
                     type=click.IntRange(min=2),
                     help="Largest prime point counting may enumerate."),
        click.option("--out", "output", type=click.Path(dir_okay=False),
                     help="Write the JSON report to this path."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def resolve_field(text):
    return parse_field(text)


def resolve_curve_text(text):
    """
    Resolve a --curve value.

    Raises:
        ParseError:
            If the value is not a label, a readable stanza file with a
            curve, or a curve body.
    """
    curve = resolve_curve(text)
    if curve is not None:
        return curve
    if os.path.isfile(text):
        inputs = parse_inputs([text])
        if not inputs.curves:
            raise ParseError(f"no curve stanza in {text}")
        return inputs.curves[0]
    return parse_curve(text)


def resolve_point(field_text, curve_text, point_text):
    """
    Resolve --field, --curve and --point into an ECPoint.

    A stanza file given as --point supplies its own field and curve for its
    first point.
    """
    if os.path.isfile(point_text):
        inputs = parse_inputs([point_text])
        if not inputs.points:
            raise ParseError(f"no point stanza in {point_text}")
        return inputs.points[0]
    field = resolve_field(field_text)
    curve = resolve_curve_text(curve_text)
    return parse_point(point_text, curve, field)


def emit(title, rows, report, config):
    """
    Print a styled record and write the JSON report when --out is set.

    Args:
        title (str):
            The record title.
        rows (list):
            (key, value, style class) triples.
        report (dict):
            The JSON-compatible report.
        config (RunConfig):
            The run config (its output path is used).
    """
    print_record(title, rows)
    if config.output:
        with open(config.output, "w", encoding="utf-8") as handle:
            handle.write(json.dumps(report, indent=2, sort_keys=True))
            handle.write("\n")
        logger.info("report written to %s", config.output)
