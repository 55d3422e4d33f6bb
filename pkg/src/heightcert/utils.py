"""A module containing utility functions for terminal output and logging."""

import logging
import shutil
import sys

from prompt_toolkit import print_formatted_text
from prompt_toolkit.formatted_text import FormattedText

from heightcert.styles import style

LOG_FORMAT = "%(name)s [%(levelname)s] %(message)s"


def configure_logging(verbosity=0):
    """
    Install a single stderr handler on the heightcert logger.

    Args:
        verbosity (int):
            0 for warnings only, 1 for INFO, 2 or more for DEBUG.
    """
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logger = logging.getLogger("heightcert")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False


def print_styled(fragments, file=None):
    """
    Print (style class, text) fragments with the package style.

    Args:
        fragments (list):
            A list of (style, text) tuples as used by FormattedText.
        file (file, optional):
            The output stream, stdout by default.
    """
    print_formatted_text(
        FormattedText(fragments), style=style, file=file or sys.stdout
    )


def print_record(title, rows, file=None):
    """
    Print a titled block of key/value rows.

    Args:
        title (str):
            The block title.
        rows (list):
            (key, value, style class) triples; the style class may be None.
        file (file, optional):
            The output stream.
    """
    fragments = [("class:title", f"{title}\n")]
    width = max((len(key) for key, _, _ in rows), default=0)
    for key, value, cls in rows:
        fragments.append(("class:key", f"  {key.ljust(width)}  "))
        fragments.append((f"class:{cls or 'value'}", f"{value}\n"))
    print_styled(fragments, file=file)


def get_window_size():
    """
    Get the terminal window size in lines and characters.

    Falls back to 24x80 when no terminal is attached (pipes, tests).

    Returns:
        tuple: The number of lines and characters in the terminal window.
    """
    size = shutil.get_terminal_size((80, 24))
    return size.lines, size.columns
