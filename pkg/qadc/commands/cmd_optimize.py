# qadc/commands/cmd_optimize.py

"""
`qadc optimize`: search strategies for the largest achievable rate.

The best strategy is embedded in the report in strategy-file format, so it can be passed back
to `qadc rate` or `qadc simulate`.
"""

import argparse

from qadc.commands.inputs import finish, read_model, require
from qadc.core.command_registry import Command, command_registry
from qadc.core.context import Context
from qadc.core.reports import make_report
from qadc.quantum.optimizer import OptimizerConfig, default_aux_dims, optimize_rate_detailed
from qadc.quantum.serialization import strategy_to_dict


def handle_optimize(args: argparse.Namespace, context: Context) -> int:
    model, model_doc = read_model(require(args, "model"))
    dims = args.dims or default_aux_dims(model)
    config = OptimizerConfig(
        restarts=args.restarts,
        iterations=args.iterations,
        seed=args.seed,
        workers=args.workers or context.config.workers,
    )
    result = optimize_rate_detailed(model, dims, config)
    results = {
        "rate": result.report.to_dict(),
        "strategy": strategy_to_dict(result.strategy),
        "aux_dims": list(dims),
        "best_restart": result.best_restart,
        "restart_values": list(result.restart_values),
        "history": list(result.history),
    }
    inputs = {
        "model": model_doc,
        "aux_dims": list(dims),
        "restarts": args.restarts,
        "iterations": args.iterations,
        "seed": args.seed,
    }
    summary = [
        ("r_low", result.report.r_low),
        ("best restart", result.best_restart),
        ("|V|,|U|", f"{dims[0]},{dims[1]}"),
    ]
    report = make_report("optimize", inputs, results, seeds=[args.seed])
    finish(args, context, report, summary)
    return 0


command_registry.register(
    Command(
        name="optimize",
        help="Search strategies for the largest achievable rate",
        handler=handle_optimize,
    )
)
