# qadc/flags/flag_inputs.py

"""
Input file flags: --model, --strategy and --state.
"""

from qadc.core.flag_registry import Flag, flag_registry

MODEL_COMMANDS = ("info", "rate", "optimize", "simulate")
STRATEGY_COMMANDS = ("rate", "simulate")

flag_registry.register(
    Flag(
        name="model",
        short=None,
        long="model",
        help="Model file (JSON)",
        action="store",
        metavar="PATH",
        category="Inputs",
        commands=MODEL_COMMANDS,
    )
)

flag_registry.register(
    Flag(
        name="strategy",
        short=None,
        long="strategy",
        help="Strategy file (JSON)",
        action="store",
        metavar="PATH",
        category="Inputs",
        commands=STRATEGY_COMMANDS,
    )
)

flag_registry.register(
    Flag(
        name="state",
        short=None,
        long="state",
        help="State file (JSON)",
        action="store",
        metavar="PATH",
        category="Inputs",
        commands=("info",),
    )
)
