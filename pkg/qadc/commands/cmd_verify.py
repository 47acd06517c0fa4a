# qadc/commands/cmd_verify.py

"""
`qadc verify`: run randomized verification suites; exit 1 when any suite fails.
"""

import argparse

from qadc.commands.inputs import finish
from qadc.core.command_registry import Command, command_registry
from qadc.core.context import Context
from qadc.core.reports import make_report
from qadc.quantum.suites import expand_suites, run_suites


def handle_verify(args: argparse.Namespace, context: Context) -> int:
    results = run_suites(args.suite, args.seed, args.scale)
    passed = all(r.passed for r in results)
    payload = {"suites": [r.to_dict() for r in results], "pass": passed}
    inputs = {"suite": args.suite, "suites": list(expand_suites(args.suite)), "scale": args.scale}
    summary = [(r.name, f"{'pass' if r.passed else 'FAIL'} ({r.cases} cases)") for r in results]
    finish(args, context, make_report("verify", inputs, payload, seeds=[args.seed]), summary)
    return 0 if passed else 1


command_registry.register(
    Command(
        name="verify",
        help="Run the verification suites",
        handler=handle_verify,
    )
)
