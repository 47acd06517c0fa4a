# qadc/core/context.py

"""
Runtime context handed to flag and command handlers.
"""

from qadc.config.config import Config
from qadc.core.log_manager import LogManager


class Context:
    def __init__(self, config: Config, log_manager: LogManager = None):
        """
        Initialize the application context.

        Args:
            config: The CLI configuration instance.
            log_manager: Optional custom LogManager. If not provided, one is created.
        """
        self.config = config
        self.log_manager = log_manager or LogManager(
            config.log_file, config.log_level, config.log_to_console
        )
