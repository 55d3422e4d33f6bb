"""A module containing a terminal progress bar for long sweeps.

The bar is redrawn in place on stderr so it never mixes with reports written
to stdout. It is silent when disabled, which is how tests and piped runs use
it.

Example usage:
    with ProgressBar(100, description="good primes") as bar:
        for p in range(100):
            bar.advance()
"""

import sys

from prompt_toolkit import print_formatted_text
from prompt_toolkit.formatted_text import FormattedText

from heightcert.styles import style
from heightcert.utils import get_window_size


class ProgressBar:
    """
    A class to represent a progress bar.

    Attributes:
        total_steps (int):
            The total number of steps to complete.
        max_length (int):
            The maximum length of the progress bar.
        current_step (int):
            The current step in the progress bar.
        description (str):
            The label shown after the counts.
        enabled (bool):
            Whether anything is drawn.
    """

    def __init__(self, total, description="", enabled=True):
        """
        Initialize the progress bar.

        Args:
            total (int):
                The total number of steps to complete.
            description (str):
                The label shown after the counts.
            enabled (bool):
                Draw nothing when False.
        """
        self.total_steps = max(total, 1)
        self.max_length = get_window_size()[1] - 4
        self.current_step = 0
        self.description = description
        self.enabled = enabled

    def update_progress(self, step):
        """
        Update the progress bar.

        Args:
            step (int):
                The number of steps to increment the progress bar by.
        """
        self.current_step = min(self.current_step + step, self.total_steps)
        if not self.enabled:
            return

        # Define the text that'll appear at the end
        back = (
            f"{self.current_step / self.total_steps * 100:.2f}% "
            f"({self.current_step}/{self.total_steps})"
            f" [{self.description}]"
        )

        # How long can the bar be including the end text?
        bar_length = max(self.max_length - len(back) - 3, 10)
        filled_length = int(bar_length * self.current_step // self.total_steps)
        bar = "█" * filled_length + " " * (bar_length - filled_length)

        print_formatted_text(
            FormattedText([("class:progress", bar), ("", f" | {back}")]),
            style=style,
            file=sys.stderr,
            end="\r",
        )

    def __enter__(self):
        """Begin the progress bar."""
        self.update_progress(step=0)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        """
        End the progress bar.

        Args:
            exc_type (type):
                The type of the exception.
            exc_val (Exception):
                The exception instance.
            exc_tb (Traceback):
                The traceback.
        """
        # Only show completion when the loop actually finished
        if exc_type is None:
            self.update_progress(self.total_steps)
        if self.enabled:
            print_formatted_text("", file=sys.stderr)
        self.current_step = 0

    def advance(self, step=1):
        """Advance the progress bar."""
        self.update_progress(step=step)
