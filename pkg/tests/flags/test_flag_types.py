import argparse

import pytest

from qadc.flags.flag_code import alpha_grid
from qadc.flags.flag_run import positive_int, seed_value
from qadc.flags.flag_search import aux_dims
from qadc.flags.flag_verify import fraction


def test_positive_int():
    """Test that positive_int accepts 1 and rejects 0 and text."""
    assert positive_int("1") == 1
    for text in ("0", "-3", "two"):
        with pytest.raises(argparse.ArgumentTypeError):
            positive_int(text)


def test_seed_value():
    """Test that seeds must be non-negative integers."""
    assert seed_value("0") == 0
    assert seed_value("18446744073709551615") == 2**64 - 1
    for text in ("-1", "1.5"):
        with pytest.raises(argparse.ArgumentTypeError):
            seed_value(text)


def test_alpha_grid():
    """Test that the grid parses comma-separated orders and refuses empty input."""
    assert alpha_grid("0.1,0.25") == (0.1, 0.25)
    for text in ("", ",", "0.1,a"):
        with pytest.raises(argparse.ArgumentTypeError):
            alpha_grid(text)


def test_aux_dims():
    """Test that --dims takes exactly two integer sizes."""
    assert aux_dims("2,3") == (2, 3)
    for text in ("2", "2,3,4", "a,b"):
        with pytest.raises(argparse.ArgumentTypeError):
            aux_dims(text)


def test_fraction():
    """Test that scales lie in (0, 1]."""
    assert fraction("1") == 1.0
    assert fraction("0.05") == 0.05
    for text in ("0", "1.5", "x"):
        with pytest.raises(argparse.ArgumentTypeError):
            fraction(text)
