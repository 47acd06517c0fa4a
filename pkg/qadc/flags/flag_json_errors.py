# qadc/flags/flag_json_errors.py

"""
Defines --json-errors, which makes failures print a JSON object on stderr instead of a
styled message.
"""

from qadc.core.flag_registry import Flag, flag_registry

flag_registry.register(
    Flag(
        name="json-errors",
        short=None,
        long="json-errors",
        help='Report errors as {"error", "message", "exit_code"} JSON on stderr',
        action="store_true",
        default=False,
        category="General",
    )
)
