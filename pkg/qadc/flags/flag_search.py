# qadc/flags/flag_search.py

"""
Optimizer flags: --restarts, --iterations and --dims.
"""

import argparse

from qadc.core.flag_registry import Flag, flag_registry
from qadc.flags.flag_run import positive_int


def aux_dims(text: str) -> tuple[int, int]:
    """argparse type for "|V|,|U|"."""
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two sizes as V,U, got {text!r}")
    try:
        n_v, n_u = (int(p) for p in parts)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected integer sizes, got {text!r}") from e
    return n_v, n_u


flag_registry.register(
    Flag(
        name="restarts",
        short=None,
        long="restarts",
        help="Independent restarts (default: 16)",
        action="store",
        value_type=positive_int,
        default=16,
        metavar="N",
        category="Search",
        commands=("optimize",),
    )
)

flag_registry.register(
    Flag(
        name="iterations",
        short=None,
        long="iterations",
        help="Pattern-search sweeps per restart (default: 200)",
        action="store",
        value_type=positive_int,
        default=200,
        metavar="N",
        category="Search",
        commands=("optimize",),
    )
)

flag_registry.register(
    Flag(
        name="dims",
        short=None,
        long="dims",
        help="Auxiliary sizes |V|,|U| (default: d_S*d_A for both)",
        action="store",
        value_type=aux_dims,
        default=None,
        metavar="V,U",
        category="Search",
        commands=("optimize",),
    )
)
