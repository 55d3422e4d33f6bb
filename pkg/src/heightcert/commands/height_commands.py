"""Commands for Weil heights, v-adic distances and canonical heights."""

import click

from heightcert.canonical import canonical_height, height_comparison_bound
from heightcert.commands.options import (
    emit,
    field_option,
    numeric_options,
    point_options,
    resolve_field,
    resolve_point,
)
from heightcert.config import RunConfig
from heightcert.errors import error_handler
from heightcert.heights import check_local_global, delta_v, weil_height
from heightcert.intervals import format_interval
from heightcert.parsing import parse_projective
from heightcert.places import places


@click.command("weil", help="Enclose the Weil height of a projective point.")
@field_option
@click.option("--x", "coords", required=True,
              help="The point as '[x0; x1; ...]'.")
@numeric_options
@error_handler
def weil(field, coords, **options):
    config = RunConfig.from_options(command="weil", **options)
    number_field = resolve_field(field)
    x = parse_projective(coords, number_field)
    value = weil_height(x, config.precision)
    report = {"field": str(number_field), "x": str(x),
              "height": format_interval(value)}
    emit("Weil height", [("x", str(x), None),
                         ("h(x)", format_interval(value), "interval")],
         report, config)


@click.command(
    "delta",
    help="Enclose the v-adic distances of two points and check the "
    "local-global inequality over the chosen places.",
)
@field_option
@click.option("--x", "first", required=True, help="The first point.")
@click.option("--y", "second", required=True, help="The second point.")
@click.option("--p", "primes", type=click.IntRange(min=2), multiple=True,
              help="Include the places above p (repeatable).")
@numeric_options
@error_handler
def delta(field, first, second, primes, **options):
    config = RunConfig.from_options(command="delta", **options)
    number_field = resolve_field(field)
    x = parse_projective(first, number_field)
    y = parse_projective(second, number_field)
    chosen = places(number_field, primes)
    rows = [("x", str(x), None), ("y", str(y), None)]
    distances = {}
    for place in chosen:
        value = delta_v(x, y, place, config.precision)
        text = "inf" if value == float("inf") else format_interval(value)
        distances[str(place)] = text
        rows.append((f"delta {place}", text, "interval"))
    report = {"field": str(number_field), "x": str(x), "y": str(y),
              "delta": distances}
    if x != y:
        lhs, rhs, holds = check_local_global(
            x, y, chosen, config.precision, config.precision_cap
        )
        report["local_global"] = {"lhs": format_interval(lhs),
                                  "rhs": format_interval(rhs),
                                  "holds": holds}
        rows.append(("h(x) + h(y)", format_interval(lhs), "interval"))
        rows.append(("sum - log 2", format_interval(rhs), "interval"))
        rows.append(("inequality", "holds" if holds else "fails",
                     "holds" if holds else "fails"))
    emit("v-adic distances", rows, report, config)


@click.command("canonical", help="Compute a canonical height.")
@point_options
@click.option("--normalization", type=click.Choice(["x", "psi"]),
              default="x", show_default=True)
@numeric_options
@error_handler
def canonical(field, curve, point, normalization, **options):
    config = RunConfig.from_options(command="canonical", **options)
    target = resolve_point(field, curve, point)
    result = canonical_height(target, normalization,
                              **config.height_options())
    bound = height_comparison_bound(target.curve, config.precision)
    report = {
        "curve": str(target.curve),
        "field": str(target.field),
        "point": str(target),
        "height": result.to_json(),
        "constants": bound.to_json(),
    }
    rows = [
        ("curve", str(target.curve), None),
        ("point", str(target), None),
        (f"h^_{normalization}", str(result),
         "torsion" if result.torsion else "interval"),
    ]
    if not result.torsion:
        rows.append(("doublings", str(result.doublings), None))
    emit("Canonical height", rows, report, config)
