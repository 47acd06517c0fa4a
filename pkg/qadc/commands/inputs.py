# qadc/commands/inputs.py

"""
Input loading and report output shared by the subcommands.
"""

import argparse
from collections.abc import Iterable
from typing import Any

from qadc.core.context import Context
from qadc.core.errors import UsageError
from qadc.core.reports import RunReport, emit_report
from qadc.quantum.model import ActionModel, Strategy, check_compatible
from qadc.quantum.serialization import (
    load_json,
    model_from_dict,
    model_to_dict,
    strategy_from_dict,
    strategy_to_dict,
)
from qadc.utils.console import console
from qadc.utils.formatting import print_table


def require(args: argparse.Namespace, attribute: str) -> Any:
    """
    Value of a flag the command cannot run without.

    Raises:
        UsageError: If the flag was not given.
    """
    value = getattr(args, attribute, None)
    if value is None:
        raise UsageError(f"qadc {args.command}: --{attribute.replace('_', '-')} is required")
    return value


def read_model(path: str) -> tuple[ActionModel, dict]:
    """Load a model and return it with its canonical document for digests."""
    model = model_from_dict(load_json(path), where=path)
    return model, model_to_dict(model)


def read_strategy(path: str, model: ActionModel) -> tuple[Strategy, dict]:
    """
    Load a strategy and check it against the model.

    Raises:
        RegisterMismatch: If its registers do not fit the model.
    """
    strat = strategy_from_dict(load_json(path), where=path)
    check_compatible(model, strat)
    return strat, strategy_to_dict(strat)


def finish(
    args: argparse.Namespace,
    context: Context,
    report: RunReport,
    summary: Iterable[tuple[str, Any]],
) -> None:
    """
    Write the report and log the run.

    With --out the report goes to the file and a summary table is printed; otherwise the JSON
    report is the only output on stdout.
    """
    rows = list(summary)
    emit_report(report, args.out)
    if args.out:
        print_table(f"qadc {report.command}", rows)
        console.print(f"[green][+] Report written to {args.out}[/green]")
    headline = " ".join(f"{k}={v}" for k, v in rows[:3])
    context.log_manager.write_run(report.command, report.inputs_digest, headline)
