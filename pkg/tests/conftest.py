from pathlib import Path
from unittest.mock import MagicMock

import pytest

import qadc.data
import qadc.main as cli_main

DATA = Path(qadc.data.__file__).parent


@pytest.fixture
def data_file():
    """Resolve a shipped data file by name."""
    return lambda name: str(DATA / name)


@pytest.fixture
def log_manager():
    """Provide the mocked LogManager handed to every run."""
    return MagicMock()


@pytest.fixture
def run_cli(monkeypatch, log_manager):
    """Run the qadc entry point with a fixed config and return its exit code."""
    config = MagicMock()
    config.workers = 1
    config.exact_dim_limit = 64
    config.alpha_grid = (0.1, 0.25)
    monkeypatch.setattr(cli_main, "Config", lambda: config)
    monkeypatch.setattr(cli_main, "LogManager", lambda *a, **kw: log_manager)

    def run(*argv: str) -> int:
        with pytest.raises(SystemExit) as exc_info:
            cli_main.main(list(argv))
        return exc_info.value.code

    return run
