"""
Main entry point for the qadc command line.

Loads the flag and command modules, parses the arguments, builds the runtime context and
dispatches to a subcommand. Library errors are mapped to their exit codes here.
"""

import argparse
import importlib
import json
import pkgutil
import sys

import qadc.commands
import qadc.flags
from qadc.config.config import Config
from qadc.core.command_registry import command_registry
from qadc.core.context import Context
from qadc.core.errors import QadcError, describe_exit_codes
from qadc.core.flag_registry import flag_registry
from qadc.core.log_manager import LogManager
from qadc.utils.console import err_console


def load_all_flags() -> None:
    """Import every module of the flags package, registering its flags."""
    for _, name, _ in pkgutil.iter_modules(qadc.flags.__path__):
        importlib.import_module(f"qadc.flags.{name}")


def load_all_commands() -> None:
    """Import every `cmd_*` module of the commands package, registering its command."""
    for _, name, _ in pkgutil.iter_modules(qadc.commands.__path__):
        if name.startswith("cmd_"):
            importlib.import_module(f"qadc.commands.{name}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qadc",
        description="Rates and one-shot error bounds for quantum action-dependent channels",
        epilog=describe_exit_codes(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    flag_registry.apply_to_parser(parser)
    command_registry.apply_to_parser(parser)
    return parser


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    """
    Parse command-line arguments.

    Returns:
        argparse.Namespace: Parsed arguments; `command` is None when no subcommand was given.
    """
    return build_parser().parse_args(argv)


def report_error(error: QadcError, args: argparse.Namespace, context: Context | None) -> int:
    """Log a library error, print it to stderr and return its exit code."""
    name = type(error).__name__
    if context is not None:
        context.log_manager.log_error(f"{args.command}: {name}: {error}")
    if getattr(args, "json_errors", False):
        payload = {"error": name, "message": str(error), "exit_code": error.exit_code}
        sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        err_console.print(f"[bold red][x] {name}:[/bold red] {error}", highlight=False)
    return error.exit_code


def main(argv: list[str] | None = None) -> None:
    """
    Run the qadc command line and exit with the command's status.

    Exit codes follow `describe_exit_codes`; argparse usage errors exit with 2.
    """
    load_all_flags()
    load_all_commands()
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = Config()
    except QadcError as e:
        sys.exit(report_error(e, args, None))
    log_manager = LogManager(config.log_file, config.log_level, config.log_to_console)
    context = Context(config, log_manager)

    for handler, exit_after in flag_registry.get_pre_handlers(args):
        handler(args, context)
        if exit_after:
            sys.exit(0)

    if args.command is None:
        parser.print_help(sys.stderr)
        sys.exit(2)

    try:
        code = command_registry.run(args, context)
    except QadcError as e:
        code = report_error(e, args, context)
    sys.exit(code)


if __name__ == "__main__":
    main()
