# qadc/core/log_manager.py

"""
LogManager for qadc.

Owns the `qadc` logger that every library module logs under. File output goes through a
RotatingFileHandler attached on first use; console output is an optional RichHandler. Each
command run is recorded with its inputs digest and a short summary.
"""

import logging
import os
from logging.handlers import RotatingFileHandler

from rich.logging import RichHandler

from qadc.utils.console import console, err_console

LOGGER_NAME = "qadc"


class LogManager:
    """
    Manages the run log of the qadc command line.
    """

    def __init__(
        self,
        path: str,
        log_level: str = "WARNING",
        log_to_console: bool = False,
        permissions: int = 0o600,
    ):
        """
        Initialize the LogManager.

        Args:
            path: Path to the log file.
            log_level: Logging level name; unknown names fall back to WARNING.
            log_to_console: Whether to also log to the console.
            permissions: File permissions for the log file.
        """
        self.path = os.path.expanduser(path)
        self.permissions = permissions
        self.logger = logging.getLogger(LOGGER_NAME)
        self.logger.setLevel(getattr(logging, log_level.upper(), logging.WARNING))
        self._file_handler_initialized = False

        self.logger.handlers.clear()

        if log_to_console:
            console_handler = RichHandler(
                show_time=True, show_level=True, show_path=False, console=err_console
            )
            console_handler.setFormatter(logging.Formatter("%(message)s"))
            self.logger.addHandler(console_handler)

    def _init_file_handler(self):
        if self._file_handler_initialized:
            return

        try:
            file_handler = RotatingFileHandler(
                self.path, maxBytes=1024 * 1024 * 10, backupCount=5, encoding="utf-8"
            )
        except OSError as e:
            err_console.print(f"[yellow][-] Cannot open log file {self.path}: {e}[/yellow]")
            self._file_handler_initialized = True
            return
        file_handler.setFormatter(logging.Formatter("%(asctime)s - %(levelname)s - %(message)s"))
        self.logger.addHandler(file_handler)
        self._file_handler_initialized = True

        self._set_permissions()

    def _set_permissions(self):
        if os.path.exists(self.path):
            try:
                os.chmod(self.path, self.permissions)
            except OSError as e:
                err_console.print(
                    f"[bold red][x] Failed to set permissions for {self.path}: {e}[/bold red]"
                )

    def write_run(self, command: str, inputs_digest: str, summary: str):
        """
        Record one command run.

        Args:
            command: Subcommand name.
            inputs_digest: SHA-256 of the canonical inputs.
            summary: One-line outcome, e.g. the headline number.
        """
        self._init_file_handler()
        self.logger.info(f"Run: {command} inputs={inputs_digest[:16]} {summary}")

    def log_info(self, message: str):
        """Log an informational message."""
        self._init_file_handler()
        self.logger.info(message)

    def log_error(self, message: str):
        """Log an error message."""
        self._init_file_handler()
        self.logger.error(message)

    def log_debug(self, message: str):
        """Log a debug message."""
        self._init_file_handler()
        self.logger.debug(message)

    def show(self) -> None:
        """Display the contents of the log file, if it exists."""
        if not os.path.exists(self.path):
            console.print("[yellow][-] No log file found.[/yellow]")
            return
        with open(self.path, encoding="utf-8") as f:
            content = f.read()
        if content:
            console.print(content, markup=False, highlight=False)
        else:
            console.print("[yellow][-] Log file is empty.[/yellow]")

    def clear(self):
        """Delete the log file if it exists."""
        if os.path.exists(self.path):
            os.remove(self.path)
            console.print("[bold green][+] Log file has been deleted.[/bold green]")
        else:
            console.print("[yellow][-] No log file to delete.[/yellow]")
