# qadc/commands/cmd_validate.py

"""
`qadc validate PATH`: structural and numerical checks of a model, strategy, state or
channel file.

Every channel gets its CP and TP residuals, every state its Hermiticity, trace and positivity
residuals. The first failing check is raised as the matching error after the table (and the
report, with --out) has been written.
"""

import argparse
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from qadc.commands.inputs import finish
from qadc.core.command_registry import Command, command_registry
from qadc.core.context import Context
from qadc.core.errors import InvalidChannel, InvalidState, QadcError
from qadc.core.reports import make_report
from qadc.quantum.channels import CPTP_ATOL, KrausChannel, channel_residuals
from qadc.quantum.linalg_core import DENSITY_ATOL
from qadc.quantum.serialization import (
    channel_from_dict,
    decode_matrix,
    decode_register,
    document_kind,
    load_json,
    model_from_dict,
    strategy_from_dict,
)
from qadc.utils.console import console
from qadc.utils.formatting import print_table


@dataclass(frozen=True)
class Check:
    subject: str
    name: str
    residual: float
    tolerance: float
    error: type[QadcError]

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    @property
    def message(self) -> str:
        return f"{self.subject}: {self.name} residual {self.residual:.12g}"

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "check": self.name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def channel_checks(subject: str, ch: KrausChannel) -> list[Check]:
    residuals = channel_residuals(ch)
    return [
        Check(subject, "complete-positivity", residuals.cp_residual, CPTP_ATOL, InvalidChannel),
        Check(subject, "trace-preservation", residuals.tp_residual, CPTP_ATOL, InvalidChannel),
    ]


def state_checks(subject: str, matrix: np.ndarray) -> list[Check]:
    asymmetry = float(np.max(np.abs(matrix - matrix.conj().T), initial=0.0))
    herm = (matrix + matrix.conj().T) / 2
    trace = float(np.trace(herm).real)
    lowest = float(scipy.linalg.eigvalsh(herm)[0]) if herm.size else 0.0
    return [
        Check(subject, "hermiticity", asymmetry, DENSITY_ATOL, InvalidState),
        Check(subject, "unit-trace", abs(trace - 1.0), DENSITY_ATOL, InvalidState),
        Check(subject, "positivity", max(0.0, -lowest), DENSITY_ATOL, InvalidState),
    ]


def collect_checks(document: dict, where: str) -> tuple[str, list[Check]]:
    """Classify a parsed document and compute all of its checks."""
    kind = document_kind(document)
    if kind == "model":
        model = model_from_dict(document, where=where, checked=False)
        checks = channel_checks("action_channel", model.action_channel)
        checks += channel_checks("comm_channel", model.comm_channel)
    elif kind == "channel":
        checks = channel_checks("channel", channel_from_dict(document, where, checked=False))
    elif kind == "state":
        decode_register(document.get("register"), f"{where}.register")
        checks = state_checks("state", decode_matrix(document.get("matrix"), f"{where}.matrix"))
    else:
        strat = strategy_from_dict(document, where)
        checks = []
        for u, state in enumerate(strat.action_states):
            checks += state_checks(f"action_states[{u}]", state.matrix)
        for v, enc in enumerate(strat.encoders):
            checks += channel_checks(f"encoders[{v}]", enc)
    return kind, checks


def handle_validate(args: argparse.Namespace, context: Context) -> int:
    document = load_json(args.path)
    kind, checks = collect_checks(document, args.path)
    failed = [c for c in checks if not c.passed]
    report = make_report(
        "validate",
        {"document": document},
        {"kind": kind, "checks": [c.to_dict() for c in checks], "pass": not failed},
    )
    summary = [("kind", kind)] + [(f"{c.subject} {c.name}", c.residual) for c in checks]
    if args.out:
        finish(args, context, report, summary)
    else:
        print_table(f"qadc validate {args.path}", summary)
        context.log_manager.write_run("validate", report.inputs_digest, f"kind={kind}")
    if failed:
        first = failed[0]
        raise first.error(first.message)
    console.print(f"[green][+] {args.path}: valid {kind}[/green]")
    return 0


def configure(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("path", help="Model, strategy, state or channel file (JSON)")


command_registry.register(
    Command(
        name="validate",
        help="Check a model, strategy, state or channel file",
        handler=handle_validate,
        configure=configure,
    )
)
