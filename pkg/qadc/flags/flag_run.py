# qadc/flags/flag_run.py

"""
Run control flags shared by several subcommands: --seed, --workers and --out.
"""

import argparse

from qadc.core.flag_registry import Flag, flag_registry


def positive_int(text: str) -> int:
    """argparse type for integers >= 1."""
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from e
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return value


def seed_value(text: str) -> int:
    """argparse type for non-negative seeds."""
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}") from e
    if value < 0:
        raise argparse.ArgumentTypeError("seeds must be non-negative")
    return value


flag_registry.register(
    Flag(
        name="seed",
        short=None,
        long="seed",
        help="Master seed (default: 0)",
        action="store",
        value_type=seed_value,
        default=0,
        metavar="N",
        category="Run",
        commands=("optimize", "simulate", "verify"),
    )
)

flag_registry.register(
    Flag(
        name="workers",
        short=None,
        long="workers",
        help="Worker processes; never changes results (default: QADC_WORKERS or 1)",
        action="store",
        value_type=positive_int,
        default=None,
        metavar="N",
        category="Run",
        commands=("optimize", "simulate"),
    )
)

flag_registry.register(
    Flag(
        name="out",
        short="o",
        long="out",
        help="Write the JSON report to PATH instead of stdout",
        action="store",
        default=None,
        metavar="PATH",
        category="Run",
        commands=("validate", "info", "rate", "optimize", "simulate", "verify"),
    )
)
