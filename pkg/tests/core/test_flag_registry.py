import argparse
from unittest.mock import MagicMock

import pytest

from qadc.core.flag_registry import Flag, FlagRegistry


# Fixture for a mock handler function
@pytest.fixture
def mock_handler():
    """Provide a mocked handler function."""
    return MagicMock()


# Fixture for a global store_true flag
@pytest.fixture
def global_flag(mock_handler):
    """Provide a global flag with a pre-handler."""
    return Flag(
        name="json_errors",
        short=None,
        long="json-errors",
        help="Print errors as JSON",
        action="store_true",
        category="Output",
        pre_handler=mock_handler,
        priority=10,
    )


# Fixture for a scoped store flag
@pytest.fixture
def seed_flag():
    """Provide a flag scoped to two subcommands."""
    return Flag(
        name="seed",
        short="s",
        long="seed",
        help="Master seed",
        action="store",
        value_type=int,
        default=0,
        category="Randomness",
        commands=("simulate", "optimize"),
    )


def test_register_duplicate_long_flag(seed_flag):
    """Test that a repeated long name raises ValueError."""
    registry = FlagRegistry()
    registry.register(seed_flag)
    with pytest.raises(ValueError, match="Flag with long=seed already registered"):
        registry.register(Flag(name="other", short=None, long="seed", help="x"))


def test_register_duplicate_short_flag(seed_flag):
    """Test that a repeated short name raises ValueError."""
    registry = FlagRegistry()
    registry.register(seed_flag)
    with pytest.raises(ValueError, match="Flag with short=s already registered"):
        registry.register(Flag(name="other", short="s", long="other", help="x"))


def test_flags_for_scopes(global_flag, seed_flag):
    """Test that global flags and scoped flags are kept apart."""
    registry = FlagRegistry()
    registry.register(global_flag)
    registry.register(seed_flag)
    assert registry.flags_for(None) == [global_flag]
    assert registry.flags_for("simulate") == [seed_flag]
    assert registry.flags_for("validate") == []


# Test applying flags to a parser
def test_apply_to_parser_uses_categories(seed_flag):
    """Test that flags are added to their category group with argparse settings."""
    registry = FlagRegistry()
    registry.register(seed_flag)

    parser = MagicMock(spec=argparse.ArgumentParser)
    mock_group = MagicMock()
    parser.add_argument_group.return_value = mock_group

    registry.apply_to_parser(parser, "optimize")

    parser.add_argument_group.assert_called_once_with("Randomness")
    mock_group.add_argument.assert_called_once_with(
        "-s", "--seed", help="Master seed", action="store", type=int, default=0, dest="seed"
    )


def test_apply_to_real_parser(seed_flag):
    """Test that a scoped flag parses on its subcommand parser."""
    registry = FlagRegistry()
    registry.register(seed_flag)
    parser = argparse.ArgumentParser()
    registry.apply_to_parser(parser, "simulate")
    assert parser.parse_args(["--seed", "7"]).seed == 7
    assert parser.parse_args([]).seed == 0


def test_required_and_choices():
    """Test that required flags and choices reach argparse."""
    registry = FlagRegistry()
    registry.register(
        Flag(
            name="mode",
            short=None,
            long="mode",
            help="Encoder mode",
            action="store",
            choices=("a", "b"),
            required=True,
            commands=("simulate",),
        )
    )
    parser = argparse.ArgumentParser()
    registry.apply_to_parser(parser, "simulate")
    assert parser.parse_args(["--mode", "b"]).mode == "b"
    with pytest.raises(SystemExit):
        parser.parse_args(["--mode", "c"])
    with pytest.raises(SystemExit):
        parser.parse_args([])


def test_attribute_from_dest_or_long():
    """Test that the namespace attribute follows dest, else the long name."""
    assert Flag(name="x", short=None, long="json-errors", help="").attribute == "json_errors"
    assert Flag(name="x", short=None, long="out", help="", dest="target").attribute == "target"


# Test get_pre_handlers
def test_get_pre_handlers_by_priority(global_flag):
    """Test that provided global flags yield handlers sorted by priority."""
    registry = FlagRegistry()
    low = MagicMock()
    registry.register(global_flag)
    registry.register(
        Flag(
            name="log",
            short=None,
            long="log",
            help="Show the log",
            pre_handler=low,
            priority=1,
            exit_after=True,
        )
    )

    args = argparse.Namespace(json_errors=True, log=True)
    assert registry.get_pre_handlers(args) == [
        (global_flag.pre_handler, False),
        (low, True),
    ]


def test_get_pre_handlers_unprovided(global_flag):
    """Test that flags left unset produce no handlers."""
    registry = FlagRegistry()
    registry.register(global_flag)
    assert registry.get_pre_handlers(argparse.Namespace(json_errors=False)) == []
    assert registry.get_pre_handlers(argparse.Namespace()) == []


def test_get_pre_handlers_ignores_scoped_flags():
    """Test that scoped flags never contribute pre-handlers."""
    registry = FlagRegistry()
    registry.register(
        Flag(
            name="x",
            short=None,
            long="x",
            help="",
            pre_handler=MagicMock(),
            commands=("rate",),
        )
    )
    assert registry.get_pre_handlers(argparse.Namespace(x=True)) == []
