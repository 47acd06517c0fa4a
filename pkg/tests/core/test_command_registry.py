import argparse
from unittest.mock import MagicMock

import pytest

from qadc.core.command_registry import Command, CommandRegistry
from qadc.core.flag_registry import Flag, FlagRegistry


@pytest.fixture
def flags():
    """Provide a flag registry with one flag scoped to 'rate'."""
    registry = FlagRegistry()
    registry.register(
        Flag(
            name="block",
            short=None,
            long="block",
            help="Block length",
            action="store",
            value_type=int,
            default=1,
            commands=("rate",),
        )
    )
    return registry


def test_register_duplicate_command(flags):
    """Test that registering a name twice raises ValueError."""
    registry = CommandRegistry(flags)
    registry.register(Command("rate", "Rate", MagicMock()))
    with pytest.raises(ValueError, match="Command rate already registered"):
        registry.register(Command("rate", "Again", MagicMock()))


def test_subparsers_receive_scoped_flags(flags):
    """Test that each subparser gets only its own flags and configure hook."""
    registry = CommandRegistry(flags)
    registry.register(Command("rate", "Rate", MagicMock()))
    registry.register(
        Command("info", "Info", MagicMock(), configure=lambda p: p.add_argument("path"))
    )
    parser = argparse.ArgumentParser(prog="qadc")
    registry.apply_to_parser(parser)

    args = parser.parse_args(["rate", "--block", "2"])
    assert args.command == "rate"
    assert args.block == 2
    assert parser.parse_args(["info", "x.json"]).path == "x.json"
    with pytest.raises(SystemExit):
        parser.parse_args(["info", "x.json", "--block", "2"])
    assert registry.names == ["rate", "info"]


def test_run_dispatches_and_returns_code(flags):
    """Test that run calls the handler and returns its exit code."""
    handler = MagicMock(return_value=1)
    registry = CommandRegistry(flags)
    registry.register(Command("verify", "Verify", handler))
    args = argparse.Namespace(command="verify")
    context = MagicMock()

    assert registry.run(args, context) == 1
    handler.assert_called_once_with(args, context)


def test_run_unknown_command(flags):
    """Test that an unregistered command raises KeyError."""
    with pytest.raises(KeyError):
        CommandRegistry(flags).run(argparse.Namespace(command="nope"), MagicMock())
