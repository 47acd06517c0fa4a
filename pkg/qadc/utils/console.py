# qadc/utils/console.py

"""
Shared Rich consoles: `console` for human-readable output, `err_console` for diagnostics on
stderr so that JSON reports on stdout stay clean.
"""

from rich.console import Console

console = Console()
err_console = Console(stderr=True)
