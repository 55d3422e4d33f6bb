from heightcert.commands.height_commands import canonical, delta, weil
from heightcert.commands.field_commands import adcheck, places_command
from heightcert.commands.curve_commands import frobpoly, series, torsion
from heightcert.commands.certify_commands import (
    certify_command,
    good_prime,
    verify,
)
from heightcert.commands.sweep_commands import sweep
