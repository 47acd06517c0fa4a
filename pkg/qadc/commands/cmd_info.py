# qadc/commands/cmd_info.py

"""
`qadc info`: entropic summary of a state, or register and channel summary of a model.
"""

import argparse

import numpy as np

from qadc.commands.inputs import finish, read_model
from qadc.core.command_registry import Command, command_registry
from qadc.core.context import Context
from qadc.core.errors import UsageError
from qadc.core.reports import make_report
from qadc.quantum.channels import channel_residuals
from qadc.quantum.divergences import mutual_information, von_neumann_entropy
from qadc.quantum.linalg_core import DensityMatrix, partial_trace, support_projector
from qadc.quantum.model import ActionModel
from qadc.quantum.serialization import (
    encode_register,
    load_state,
    model_registers,
    state_to_dict,
)


def state_info(state: DensityMatrix) -> dict:
    """Entropy, purity, rank, single-subsystem entropies and first|rest mutual information."""
    names = state.register.names
    info = {
        "kind": "state",
        "register": encode_register(state.register),
        "entropy": von_neumann_entropy(state),
        "purity": float(np.real(np.trace(state.matrix @ state.matrix))),
        "rank": int(round(support_projector(state).trace().real)),
        "marginal_entropies": {
            name: von_neumann_entropy(partial_trace(state, [name])) for name in names
        },
    }
    if len(names) > 1:
        cut = ([names[0]], list(names[1:]))
        info["cut"] = [cut[0], cut[1]]
        info["mutual_information"] = mutual_information(state, cut)
    return info


def model_info(model: ActionModel) -> dict:
    channels = {}
    pairs = (("action_channel", model.action_channel), ("comm_channel", model.comm_channel))
    for label, ch in pairs:
        residuals = channel_residuals(ch)
        channels[label] = {
            "input": encode_register(ch.input_register),
            "output": encode_register(ch.output_register),
            "kraus_count": ch.rank,
            "cp_residual": residuals.cp_residual,
            "tp_residual": residuals.tp_residual,
        }
    return {
        "kind": "model",
        "name": model.name,
        "description": model.description,
        "registers": model_registers(model),
        "channels": channels,
    }


def handle_info(args: argparse.Namespace, context: Context) -> int:
    if (args.state is None) == (args.model is None):
        raise UsageError("qadc info: give exactly one of --state or --model")
    if args.state is not None:
        state = load_state(args.state)
        results = state_info(state)
        inputs = {"state": state_to_dict(state)}
        summary = [
            ("entropy", results["entropy"]),
            ("purity", results["purity"]),
            ("rank", results["rank"]),
        ]
        summary += [(f"H({n})", h) for n, h in results["marginal_entropies"].items()]
        if "mutual_information" in results:
            summary.append(("mutual information", results["mutual_information"]))
    else:
        model, document = read_model(args.model)
        results = model_info(model)
        inputs = {"model": document}
        summary = [(name, dim) for name, dim in results["registers"].items()]
    finish(args, context, make_report("info", inputs, results), summary)
    return 0


command_registry.register(
    Command(
        name="info",
        help="Summarize a state (entropies, mutual information) or a model",
        handler=handle_info,
    )
)
