"""
Utility functions for human-readable terminal output using Rich.
Provides value formatting and key/value tables.
"""

import math
from collections.abc import Iterable
from typing import Any

from rich.table import Table

from qadc.utils.console import console


def format_value(value: Any) -> str:
    """Render numbers with up to 12 significant digits and infinities as ∞."""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        if math.isinf(value):
            return "∞" if value > 0 else "-∞"
        return f"{value:.12g}"
    return str(value)


def key_value_table(title: str, items: Iterable[tuple[str, Any]]) -> Table:
    """
    Build a two-column table.

    Args:
        title: Table title.
        items: (label, value) pairs, values formatted with `format_value`.
    """
    table = Table(title=title, show_header=False, title_justify="left")
    table.add_column("quantity", style="bold")
    table.add_column("value", justify="right")
    for label, value in items:
        table.add_row(label, format_value(value))
    return table


def print_table(title: str, items: Iterable[tuple[str, Any]]) -> None:
    console.print(key_value_table(title, items))
