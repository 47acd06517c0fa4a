# qadc/commands/cmd_simulate.py

"""
`qadc simulate`: exact one-shot error of random codebooks, averaged over trials and compared
with the expected-error bound.
"""

import argparse

from qadc.commands.inputs import finish, read_model, read_strategy, require
from qadc.core.command_registry import Command, command_registry
from qadc.core.context import Context
from qadc.core.reports import make_report
from qadc.quantum.oneshot import CodeParams, monte_carlo_expected_error


def handle_simulate(args: argparse.Namespace, context: Context) -> int:
    model, model_doc = read_model(require(args, "model"))
    strat, strategy_doc = read_strategy(require(args, "strategy"), model)
    params = CodeParams(args.M, args.L)
    grid = args.alpha_grid or context.config.alpha_grid
    report = monte_carlo_expected_error(
        model,
        strat,
        params,
        trials=args.trials,
        master_seed=args.seed,
        workers=args.workers or context.config.workers,
        mode=args.mode,
        alpha_grid=grid,
        dim_limit=context.config.exact_dim_limit,
    )
    inputs = {
        "model": model_doc,
        "strategy": strategy_doc,
        "M": params.m,
        "L": params.ell,
        "trials": args.trials,
        "seed": args.seed,
        "mode": args.mode,
        "alpha_grid": list(grid),
    }
    summary = [
        ("mean error", report.mean_error),
        ("stderr", report.stderr),
        ("bound (min over alpha)", report.bound_rhs_min),
        ("correction", report.mean_correction),
        ("bound holds", report.bound_holds),
    ]
    run = make_report("simulate", inputs, report.to_dict(), seeds=[args.seed])
    finish(args, context, run, summary)
    return 0


command_registry.register(
    Command(
        name="simulate",
        help="Average the exact decoding error over random codebooks",
        handler=handle_simulate,
    )
)
