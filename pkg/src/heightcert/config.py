"""Run configuration shared by the library drivers and the command line.

Example usage:
    config = RunConfig(mode="theorem", tolerance=1e-10)
    config = config.replace(precision=160)
"""

import dataclasses
from dataclasses import dataclass

MODES = ("diagnostic", "theorem")
WEIGHTINGS = ("plain", "ramification")


@dataclass(frozen=True)
class RunConfig:
    """
    Every tunable of a heightcert run.

    Attributes:
        command (str):
            The subcommand being run, None for library use.
        inputs (tuple):
            The input file paths.
        precision (int):
            The starting working precision in bits.
        precision_cap (int):
            The largest precision used before giving up on a comparison.
        tolerance (float):
            The target error bound for canonical heights.
        max_doublings (int):
            The largest number of doublings a canonical height may use.
        counting_budget (int):
            The largest prime point counting enumerates.
        root_budget (int):
            The largest degree times [L:Q] a division polynomial root search
            may handle.
        descent_bound (int):
            The largest p^k searched for descent torsion points.
        exact_limit (int):
            Primes above this handle the Frobenius combination through
            residue fields and the height pairing.
        mode (str):
            "diagnostic" or "theorem".
        weighting (str):
            "plain" or "ramification" for the unramified bound.
        start (int):
            The smallest prime considered by the prime search.
        output (str):
            The report path, None for stdout.
        verbosity (int):
            The logging verbosity.
    """

    command: str = None
    inputs: tuple = ()
    precision: int = 80
    precision_cap: int = 4096
    tolerance: float = 1e-8
    max_doublings: int = 60
    counting_budget: int = 10**6
    root_budget: int = 240
    descent_bound: int = 16
    exact_limit: int = 100
    mode: str = "diagnostic"
    weighting: str = "plain"
    start: int = 2
    output: str = None
    verbosity: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.weighting not in WEIGHTINGS:
            raise ValueError(f"unknown weighting {self.weighting!r}")
        if self.precision < 16 or self.precision_cap < self.precision:
            raise ValueError("precision must be >= 16 and <= precision_cap")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")

    @classmethod
    def from_options(cls, **options):
        """
        Build a config from parsed command line options.

        Unknown keys and None values are ignored so click can pass its
        whole parameter dictionary.
        """
        names = {f.name for f in dataclasses.fields(cls)}
        return cls(
            **{
                k: (tuple(v) if k == "inputs" else v)
                for k, v in options.items()
                if k in names and v is not None
            }
        )

    def replace(self, **changes):
        """Return a copy with some fields changed."""
        return dataclasses.replace(self, **changes)

    def height_options(self):
        """Return the keyword arguments the canonical height routines take."""
        return {
            "tolerance": self.tolerance,
            "precision": self.precision,
            "precision_cap": self.precision_cap,
            "max_doublings": self.max_doublings,
            "budget": self.counting_budget,
        }
