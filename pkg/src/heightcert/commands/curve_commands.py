"""Commands about a curve at a prime: Frobenius, torsion and [p]-series."""

import click

from heightcert.commands.options import (
    curve_option,
    emit,
    numeric_options,
    point_options,
    resolve_curve_text,
    resolve_point,
)
from heightcert.config import RunConfig
from heightcert.ellcurve import (
    count_points,
    frobenius_poly,
    is_ordinary,
    torsion_test,
)
from heightcert.errors import error_handler
from heightcert.formal import formal_p_series
from heightcert.parsing import format_point


@click.command(
    "frobpoly", help="Print the characteristic polynomial of Frobenius."
)
@curve_option
@click.option("--p", "p", type=click.IntRange(min=2), required=True)
@numeric_options
@error_handler
def frobpoly(curve, p, **options):
    config = RunConfig.from_options(command="frobpoly", **options)
    target = resolve_curve_text(curve)
    count, _ = count_points(target, p, config.counting_budget)
    data = frobenius_poly(target, p, config.counting_budget)
    ordinary = is_ordinary(target, p, config.counting_budget)
    report = {
        "curve": str(target),
        "p": p,
        "count": count,
        "a_p": data.a_p,
        "polynomial": str(data),
        "ordinary": ordinary,
    }
    rows = [
        ("curve", str(target), None),
        ("#E(F_p)", str(count), None),
        ("a_p", str(data.a_p), None),
        ("Phi_p", str(data), "value"),
        ("reduction", "ordinary" if ordinary else "supersingular", None),
    ]
    emit(f"Frobenius at {p}", rows, report, config)


@click.command(
    "torsion",
    help="Decide torsion through the Frobenius combination at a prime.",
)
@point_options
@click.option("--p", "p", type=click.IntRange(min=2), required=True)
@numeric_options
@error_handler
def torsion(field, curve, point, p, **options):
    config = RunConfig.from_options(command="torsion", **options)
    target = resolve_point(field, curve, point)
    is_torsion, witness = torsion_test(target, p, config.counting_budget)
    report = {
        "curve": str(target.curve),
        "field": str(target.field),
        "point": format_point(target),
        "p": p,
        "torsion": is_torsion,
    }
    rows = [("point", str(target), None)]
    if is_torsion:
        report["r"] = str(witness)
        rows.append(("[r]P = O", f"r = {witness}", "torsion"))
    else:
        report["combination"] = format_point(witness)
        rows.append(("Phi_p(sigma)P", str(witness), None))
        rows.append(("verdict", "non-torsion", "holds"))
    emit("Torsion test", rows, report, config)


@click.command("series", help="Print the formal [p]-series modulo p.")
@curve_option
@click.option("--p", "p", type=click.IntRange(min=2), required=True)
@click.option("--order", type=click.IntRange(min=2),
              help="Truncation degree (2p + 1 by default).")
@click.option("--out", "output", type=click.Path(dir_okay=False))
@error_handler
def series(curve, p, order, output):
    config = RunConfig(command="series", output=output)
    target = resolve_curve_text(curve)
    result = formal_p_series(target, p, order)
    report = {
        "curve": str(target),
        "p": p,
        "order": result.order,
        "coefficients": list(result.coefficients),
        "first_nonzero": result.first_nonzero,
        "ordinary": result.ordinary,
    }
    rows = [
        ("curve", str(target), None),
        ("[p](T)", str(result), "value"),
        ("first non-zero", str(result.first_nonzero), None),
        ("height", "1 (ordinary)" if result.ordinary else "2", None),
    ]
    emit(f"Formal [{p}]-series", rows, report, config)
