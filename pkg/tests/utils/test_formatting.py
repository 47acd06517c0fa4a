import math
from unittest.mock import patch

from rich.table import Table

from qadc.utils.formatting import format_value, key_value_table, print_table


def test_format_value_numbers():
    """Test float rendering with 12 significant digits."""
    assert format_value(0.531004406410719) == "0.531004406411"
    assert format_value(2.0) == "2"
    assert format_value(7) == "7"


def test_format_value_infinities_and_booleans():
    """Test that infinities print as symbols and booleans as yes/no."""
    assert format_value(math.inf) == "∞"
    assert format_value(-math.inf) == "-∞"
    assert format_value(True) == "yes"
    assert format_value(False) == "no"


def test_key_value_table_rows():
    """Test that the table has one row per item and the given title."""
    table = key_value_table("qadc rate", [("r_low", 0.5), ("pass", True)])
    assert isinstance(table, Table)
    assert table.title == "qadc rate"
    assert table.row_count == 2


def test_print_table_uses_console():
    """Test that print_table hands a table to the shared console."""
    with patch("qadc.utils.formatting.console.print") as mock_print:
        print_table("qadc info", [("G", 2)])
        mock_print.assert_called_once()
        assert isinstance(mock_print.call_args[0][0], Table)
