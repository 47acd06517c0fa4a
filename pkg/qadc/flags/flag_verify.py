# qadc/flags/flag_verify.py

"""
Verification flags: --suite and --scale.
"""

import argparse

from qadc.core.flag_registry import Flag, flag_registry
from qadc.quantum.suites import SUITE_CHOICES


def fraction(text: str) -> float:
    """argparse type for a scale in (0, 1]."""
    try:
        value = float(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from e
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError("scale must lie in (0, 1]")
    return value


flag_registry.register(
    Flag(
        name="suite",
        short=None,
        long="suite",
        help="Suite or aggregate to run (default: all)",
        action="store",
        default="all",
        choices=SUITE_CHOICES,
        category="Verification",
        commands=("verify",),
    )
)

flag_registry.register(
    Flag(
        name="scale",
        short=None,
        long="scale",
        help="Fraction of the default case counts to run (default: 1)",
        action="store",
        value_type=fraction,
        default=1.0,
        metavar="X",
        category="Verification",
        commands=("verify",),
    )
)
