# qadc/core/command_registry.py

"""
Command registry for the qadc subcommands.

Each `cmd_*` module registers one `Command`. The registry builds a subparser per command,
adds the flags scoped to it from the flag registry, and dispatches parsed arguments to the
command's handler, whose return value is the process exit code.
"""

import argparse
from collections.abc import Callable
from dataclasses import dataclass

from qadc.core.context import Context
from qadc.core.flag_registry import FlagRegistry, flag_registry


@dataclass
class Command:
    """
    A subcommand.

    Attributes:
        name: Subcommand name as typed on the command line.
        help: One-line description.
        handler: Runs the command and returns the exit code.
        configure: Optional hook adding positional arguments to the subparser.
    """

    name: str
    help: str
    handler: Callable[[argparse.Namespace, Context], int]
    configure: Callable[[argparse.ArgumentParser], None] | None = None


class CommandRegistry:
    """Holds the registered subcommands in registration order."""

    def __init__(self, flags: FlagRegistry = flag_registry):
        self._commands: dict[str, Command] = {}
        self._flags = flags

    def register(self, command: Command) -> None:
        """
        Register a subcommand.

        Raises:
            ValueError: If a command with the same name exists.
        """
        if command.name in self._commands:
            raise ValueError(f"Command {command.name} already registered")
        self._commands[command.name] = command

    @property
    def names(self) -> list[str]:
        return list(self._commands)

    def apply_to_parser(self, parser: argparse.ArgumentParser) -> None:
        """Add one subparser per command, with its scoped flags."""
        subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
        for command in self._commands.values():
            sub = subparsers.add_parser(
                command.name,
                help=command.help,
                description=command.help,
                epilog=parser.epilog,
                formatter_class=parser.formatter_class,
            )
            if command.configure:
                command.configure(sub)
            self._flags.apply_to_parser(sub, command.name)

    def run(self, args: argparse.Namespace, context: Context) -> int:
        """
        Dispatch to the handler of `args.command`.

        Raises:
            KeyError: If no such command is registered.
        """
        return self._commands[args.command].handler(args, context)


# Global instance of CommandRegistry
command_registry = CommandRegistry()
