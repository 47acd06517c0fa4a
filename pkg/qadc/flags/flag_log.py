# qadc/flags/flag_log.py

"""
Flags for inspecting and clearing the run log.
"""

import argparse

from qadc.core.context import Context
from qadc.core.flag_registry import Flag, flag_registry


def show_log(_: argparse.Namespace, context: Context):
    """Display the run log using the LogManager."""
    context.log_manager.show()


def clear_log(_: argparse.Namespace, context: Context):
    """Delete the run log."""
    context.log_manager.clear()


flag_registry.register(
    Flag(
        name="log",
        short="l",
        long="log",
        help="Display the run log",
        action="store_true",
        category="Log",
        pre_handler=show_log,
        exit_after=True,
    )
)

flag_registry.register(
    Flag(
        name="clear-log",
        short=None,
        long="clear-log",
        help="Delete the run log",
        action="store_true",
        category="Log",
        pre_handler=clear_log,
        priority=10,
        exit_after=True,
    )
)
