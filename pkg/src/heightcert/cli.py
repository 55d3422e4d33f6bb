"""The heightcert command line.

Every subcommand prints a styled record on stdout and, with --out, writes a
JSON report. Errors exit with the code of their class: 2 for parse errors,
3 for failed hypotheses, 4 for an exhausted precision cap and 5 for a
refuted step.

Example usage:
    heightcert frobpoly --curve x3+x+1 --p 5
    heightcert certify --curve 37a --point "x=0 y=0" --out cert.json
    heightcert verify cert.json
"""

import click

from heightcert.commands import (
    adcheck,
    canonical,
    certify_command,
    delta,
    frobpoly,
    good_prime,
    places_command,
    series,
    sweep,
    torsion,
    verify,
    weil,
)
from heightcert.utils import configure_logging


@click.group(help="Certified canonical height lower bounds.")
@click.option("-v", "--verbose", "verbosity", count=True,
              help="Log INFO (-v) or DEBUG (-vv) messages on stderr.")
def main(verbosity):
    configure_logging(verbosity)


for command in (
    weil,
    delta,
    canonical,
    frobpoly,
    torsion,
    series,
    places_command,
    adcheck,
    good_prime,
    certify_command,
    verify,
    sweep,
):
    main.add_command(command)


if __name__ == "__main__":
    main()
