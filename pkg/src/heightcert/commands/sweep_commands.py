"""The sweep command running the corpus property sweeps."""

import click

from heightcert.commands.options import emit
from heightcert.config import RunConfig
from heightcert.corpus import CURVES, FIELDS
from heightcert.errors import RefutedStepError, error_handler
from heightcert.sweeps import annihilation_sweep, hasse_sweep


@click.command(
    "sweep",
    help="Run the Hasse or Frobenius annihilation sweep over the corpus.",
)
@click.argument("kind", type=click.Choice(["hasse", "annihilation"]))
@click.option("--curve", "labels", type=click.Choice(sorted(CURVES)),
              multiple=True, help="Restrict to corpus curves (repeatable).")
@click.option("--field", "fields", multiple=True,
              help="Fields for the annihilation sweep (repeatable).")
@click.option("--bound", type=click.IntRange(min=2), default=50,
              show_default=True, help="Largest prime.")
@click.option("--progress", is_flag=True, help="Show a progress bar.")
@click.option("--prime-budget", "counting_budget",
              type=click.IntRange(min=2))
@click.option("--out", "output", type=click.Path(dir_okay=False))
@error_handler
def sweep(kind, labels, fields, bound, progress, **options):
    config = RunConfig.from_options(command="sweep", **options)
    labels = labels or tuple(CURVES)
    if kind == "hasse":
        result = hasse_sweep(
            [CURVES[label] for label in labels], bound,
            config.counting_budget, progress,
        )
    else:
        result = annihilation_sweep(
            labels, fields or FIELDS[:4], bound, config.counting_budget,
            config.exact_limit, progress,
        )
    rows = [("sweep", kind, None), ("bound", str(bound), None),
            ("checked", str(result.checked), None),
            ("violations", str(len(result.violations)),
             "holds" if result.ok else "fails")]
    emit("Sweep", rows, result.to_json(), config)
    if not result.ok:
        raise RefutedStepError(f"{len(result.violations)} violation(s)")
