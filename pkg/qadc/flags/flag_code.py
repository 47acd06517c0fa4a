# qadc/flags/flag_code.py

"""
Code and simulation flags: --M, --L, --trials, --mode, --alpha-grid and --block.
"""

import argparse

from qadc.config.config import parse_alpha_grid
from qadc.core.flag_registry import Flag, flag_registry
from qadc.flags.flag_run import positive_int
from qadc.quantum.oneshot import ENCODER_MODES


def alpha_grid(text: str) -> tuple[float, ...]:
    """argparse type for a comma-separated list of orders."""
    try:
        grid = parse_alpha_grid(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e
    if not grid:
        raise argparse.ArgumentTypeError("the alpha grid is empty")
    return grid


flag_registry.register(
    Flag(
        name="M",
        short=None,
        long="M",
        help="Number of messages, a power of two (default: 2)",
        action="store",
        value_type=int,
        default=2,
        metavar="N",
        category="Code",
        commands=("simulate",),
    )
)

flag_registry.register(
    Flag(
        name="L",
        short=None,
        long="L",
        help="Subcodebook size, a power of two (default: 2)",
        action="store",
        value_type=int,
        default=2,
        metavar="N",
        category="Code",
        commands=("simulate",),
    )
)

flag_registry.register(
    Flag(
        name="trials",
        short=None,
        long="trials",
        help="Random codebooks to average over (default: 200)",
        action="store",
        value_type=positive_int,
        default=200,
        metavar="N",
        category="Code",
        commands=("simulate",),
    )
)

flag_registry.register(
    Flag(
        name="mode",
        short=None,
        long="mode",
        help="Encoder model (default: ideal_average)",
        action="store",
        default="ideal_average",
        choices=ENCODER_MODES,
        category="Code",
        commands=("simulate",),
    )
)

flag_registry.register(
    Flag(
        name="alpha-grid",
        short=None,
        long="alpha-grid",
        help="Comma-separated orders in (0, 1/2) for the bound (default: QADC_ALPHA_GRID)",
        action="store",
        value_type=alpha_grid,
        default=None,
        metavar="A,B,...",
        category="Code",
        commands=("simulate",),
    )
)

flag_registry.register(
    Flag(
        name="block",
        short=None,
        long="block",
        help="Also report per-letter terms for i.i.d. blocks of this length (at most 3)",
        action="store",
        value_type=positive_int,
        default=1,
        metavar="N",
        category="Code",
        commands=("rate",),
    )
)
