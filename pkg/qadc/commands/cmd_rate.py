# qadc/commands/cmd_rate.py

"""
`qadc rate`: achievable rate R_low = I(VU;B) − I(V;S|U) of a strategy on a model.
"""

import argparse

from qadc.commands.inputs import finish, read_model, read_strategy, require
from qadc.core.command_registry import Command, command_registry
from qadc.core.context import Context
from qadc.core.reports import make_report
from qadc.quantum.rate_engine import achievable_rate, assemble, block_rate_terms


def handle_rate(args: argparse.Namespace, context: Context) -> int:
    model, model_doc = read_model(require(args, "model"))
    strat, strategy_doc = read_strategy(require(args, "strategy"), model)
    bundle = assemble(model, strat)
    report = achievable_rate(bundle)
    results = report.to_dict()
    results["marginal_residual"] = bundle.marginal_residual()
    if args.block > 1:
        i_vub, i_vs_u = block_rate_terms(model, strat, args.block)
        results["block"] = {
            "n": args.block,
            "i_vub_per_letter": i_vub,
            "i_vs_given_u_per_letter": i_vs_u,
            "r_low_per_letter": i_vub - i_vs_u,
        }
    inputs = {"model": model_doc, "strategy": strategy_doc, "block": args.block}
    summary = [
        ("r_low", report.r_low),
        ("I(VU;B)", report.i_vub),
        ("I(V;S|U)", report.i_vs_given_u),
        ("capacity lower bound", report.capacity_lower_bound),
    ]
    finish(args, context, make_report("rate", inputs, results), summary)
    return 0


command_registry.register(
    Command(
        name="rate",
        help="Compute the achievable rate of a strategy on a model",
        handler=handle_rate,
    )
)
