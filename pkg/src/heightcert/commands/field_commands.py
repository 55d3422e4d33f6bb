"""Commands about fields: places, ramification and the congruence check."""

import click

from heightcert.certifier import ad_congruence_check
from heightcert.commands.options import emit, field_option, resolve_field
from heightcert.config import RunConfig
from heightcert.errors import error_handler
from heightcert.numfield import extension_info, inertia_tau
from heightcert.parsing import parse_element
from heightcert.places import places


@click.command("places", help="List the places of a field.")
@field_option
@click.option("--p", "primes", type=click.IntRange(min=2), multiple=True,
              help="Include the places above p (repeatable).")
@click.option("--out", "output", type=click.Path(dir_okay=False))
@error_handler
def places_command(field, primes, output):
    config = RunConfig(command="places", output=output)
    number_field = resolve_field(field)
    rows = [("degree", str(number_field.degree), None),
            ("discriminant", str(number_field.discriminant), None)]
    listed = []
    for place in places(number_field, primes):
        rows.append((str(place), f"n_v = {place.weight}", None))
        listed.append({"place": str(place), "weight": str(place.weight)})
    ramification = {}
    for p in primes:
        info = extension_info(number_field, p)
        ramification[str(p)] = {"e": info.e, "k": info.k}
        rows.append((f"e_{p}, k_{p}", f"{info.e}, {info.k}", None))
    report = {"field": str(number_field), "places": listed,
              "ramification": ramification}
    emit(f"Places of {number_field}", rows, report, config)


@click.command(
    "adcheck",
    help="Check v(tau(a)^p - a^p) >= e at a ramified prime.",
)
@field_option
@click.option("--alpha", required=True, help="An element integral above p.")
@click.option("--p", "p", type=click.IntRange(min=2), required=True)
@click.option("--out", "output", type=click.Path(dir_okay=False))
@error_handler
def adcheck(field, alpha, p, output):
    config = RunConfig(command="adcheck", output=output)
    number_field = resolve_field(field)
    element = parse_element(alpha, number_field)
    observed, holds = ad_congruence_check(element, p)
    info = extension_info(number_field, p)
    observed_text = "inf" if observed == float("inf") else str(observed)
    report = {
        "field": str(number_field),
        "alpha": str(element),
        "p": p,
        "tau": str(inertia_tau(number_field, p)),
        "valuation": observed_text,
        "e": info.e,
        "holds": holds,
    }
    rows = [
        ("alpha", str(element), None),
        ("tau", report["tau"], None),
        ("v(tau(a)^p - a^p)", observed_text, None),
        ("e", str(info.e), None),
        ("verdict", "holds" if holds else "fails",
         "holds" if holds else "fails"),
    ]
    emit("Inertia congruence", rows, report, config)
