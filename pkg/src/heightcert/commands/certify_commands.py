"""Commands that choose primes, build certificates and re-verify them."""

import json

import click

from heightcert.certifier import certify, verify_certificate
from heightcert.commands.options import (
    curve_option,
    emit,
    field_option,
    numeric_options,
    point_options,
    prime_option,
    resolve_curve_text,
    resolve_field,
    resolve_point,
)
from heightcert.config import MODES, WEIGHTINGS, RunConfig
from heightcert.ellcurve import select_good_prime
from heightcert.errors import ParseError, RefutedStepError, error_handler
from heightcert.utils import print_record, print_styled

VERDICT_STYLES = {
    "certified": "certified",
    "torsion": "torsion",
    "refuted-step": "fails",
    "descent-incomplete": "incomplete",
    "flagged": "incomplete",
}


def mode_option(func):
    return click.option(
        "--mode", type=click.Choice(MODES), default="diagnostic",
        show_default=True,
    )(func)


def _certificate_rows(cert, depth=0):
    """Flatten a certificate and its descent chain into styled rows."""
    indent = "  " * depth
    rows = [
        (f"{indent}field", str(cert.field), None),
        (f"{indent}point", str(cert.point), None),
        (f"{indent}p", str(cert.p), None),
        (f"{indent}branch", str(cert.branch), None),
    ]
    if cert.galois:
        rows.append((f"{indent}galois", cert.galois["element"], None))
    for check in cert.checks:
        style = "holds" if check.holds else "fails"
        rows.append((f"{indent}{check.name}", style, style))
    for child in cert.descent:
        rows.append((f"{indent}descent", str(child.field), "title"))
        rows.extend(_certificate_rows(child, depth + 1))
    if depth == 0:
        if cert.lower_bound is not None:
            rows.append(("lower bound", cert.lower_bound, "interval"))
        if cert.theorem_bound is not None:
            rows.append(("1/(12p)^2", cert.theorem_bound, None))
        if cert.measured is not None:
            rows.append(("measured h^(P)", cert.measured, "interval"))
        for note in cert.notes:
            rows.append(("note", note, None))
        rows.append(("verdict", cert.verdict,
                     VERDICT_STYLES.get(cert.verdict)))
    return rows


@click.command("good-prime", help="Select the smallest admissible prime.")
@field_option
@curve_option
@mode_option
@click.option("--start", type=click.IntRange(min=2), help="Smallest p.")
@click.option("--progress", is_flag=True, help="Show a progress bar.")
@numeric_options
@error_handler
def good_prime(field, curve, mode, start, progress, **options):
    config = RunConfig.from_options(
        command="good-prime", mode=mode, start=start, **options
    )
    number_field = resolve_field(field)
    target = resolve_curve_text(curve)
    p, report = select_good_prime(
        target,
        number_field,
        config.mode,
        config.start,
        config.counting_budget,
        config.root_budget,
        config.precision,
        progress=progress,
    )
    report.update(curve=str(target), field=str(number_field), p=p)
    rows = [("curve", str(target), None), ("field", str(number_field), None),
            ("mode", config.mode, None), ("p", str(p), "certified")]
    emit("Good prime", rows, report, config)


@click.command("certify", help="Certify a lower bound for h^(P).")
@point_options
@prime_option
@mode_option
@click.option("--weighting", type=click.Choice(WEIGHTINGS),
              default="plain", show_default=True)
@click.option("--descent-bound", type=click.IntRange(min=2),
              help="Largest p^k searched for descent torsion points.")
@numeric_options
@error_handler
def certify_command(field, curve, point, p, mode, weighting, **options):
    config = RunConfig.from_options(
        command="certify", mode=mode, weighting=weighting, **options
    )
    target = resolve_point(field, curve, point)
    cert = certify(target, config, p=p)
    emit("Certificate", _certificate_rows(cert), cert.to_dict(), config)
    if cert.verdict == "refuted-step":
        raise RefutedStepError("a certificate step failed")


@click.command("verify", help="Re-derive a certificate from its inputs.")
@click.argument("certificate", type=click.Path(exists=True,
                                               dir_okay=False))
@error_handler
def verify(certificate):
    with open(certificate, encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as e:
            raise ParseError(f"not a JSON certificate: {e.msg}", e.lineno,
                             e.colno) from e
    result = verify_certificate(data)
    rows = [("recorded verdict", str(data.get("verdict")), None),
            ("re-derived verdict", str(result.certificate.verdict),
             VERDICT_STYLES.get(result.certificate.verdict))]
    for failure in result.failures:
        rows.append(("mismatch", failure, "fails"))
    print_record("Verification", rows)
    if result.ok:
        print_styled([("class:certified", "verified\n")])
    else:
        raise RefutedStepError(
            f"{len(result.failures)} recorded step(s) did not re-verify"
        )
