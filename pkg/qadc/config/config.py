# qadc/config/config.py

"""
Configuration for the qadc command line.

Reads `.env` files and environment variables once at startup. Every setting has a default,
and none of them changes a computed number: they only select verbosity, log destination,
default worker count and the defaults of the simulation flags.
"""

import os
from collections.abc import Callable
from typing import TypeVar

from qadc.config.paths import get_cli_path, get_env_path, get_log_path
from qadc.core.errors import UsageError

DEFAULT_ALPHA_GRID = "0.05,0.10,0.15,0.20,0.25,0.30,0.35,0.40,0.45"

T = TypeVar("T")


def load_env() -> bool:
    """
    Load environment variables from .env files and make sure ~/.qadc exists.

    Returns:
        bool: True if python-dotenv is available and loading succeeded, False otherwise.
    """
    try:
        from dotenv import load_dotenv

        cli_path = get_cli_path()
        try:
            os.makedirs(cli_path, exist_ok=True)
            os.chmod(cli_path, 0o770)
        except OSError as e:
            print(f"Warning: Failed to create or set permissions for {cli_path}: {e}")

        load_dotenv()
        load_dotenv(get_env_path())
        return True
    except ImportError:
        return False


def parse_alpha_grid(text: str) -> tuple[float, ...]:
    """
    Parse a comma-separated list of orders.

    Raises:
        ValueError: If an entry is not a number.
    """
    return tuple(float(part) for part in text.split(",") if part.strip())


def env_setting(name: str, default: str, parse: Callable[[str], T]) -> T:
    """
    Read and parse one environment variable.

    Raises:
        UsageError: If the value cannot be parsed.
    """
    raw = os.getenv(name, default)
    try:
        return parse(raw)
    except ValueError as e:
        raise UsageError(f"Invalid value {raw!r} for {name}: {e}") from e


class Config:
    """
    Runtime settings for qadc.

    Attributes:
        log_file: Rotating log path (QADC_LOG_FILE).
        log_level: Logger level name (QADC_LOG).
        log_to_console: Mirror log records to the console (QADC_LOG_TO_CONSOLE).
        workers: Default process count for --workers (QADC_WORKERS).
        exact_dim_limit: Largest purified encoding built in exact_uhlmann mode
            (QADC_EXACT_DIM_LIMIT).
        alpha_grid: Default orders for the bound minimization (QADC_ALPHA_GRID).

    Raises:
        UsageError: If a numeric setting cannot be parsed.
    """

    def __init__(self):
        load_env()

        self.log_file = os.getenv("QADC_LOG_FILE", get_log_path())
        self.log_level = os.getenv("QADC_LOG", "WARNING")
        self.log_to_console = os.getenv("QADC_LOG_TO_CONSOLE", "false").lower() == "true"

        self.workers = env_setting("QADC_WORKERS", "1", int)
        self.exact_dim_limit = env_setting("QADC_EXACT_DIM_LIMIT", "64", int)
        self.alpha_grid = env_setting("QADC_ALPHA_GRID", DEFAULT_ALPHA_GRID, parse_alpha_grid)
