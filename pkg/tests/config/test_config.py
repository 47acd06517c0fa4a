import importlib
import os
import sys
from unittest.mock import MagicMock, patch

import pytest

from qadc.config import paths
from qadc.config.config import DEFAULT_ALPHA_GRID, Config, load_env, parse_alpha_grid
from qadc.core.errors import UsageError

ENV_KEYS = (
    "QADC_LOG_FILE",
    "QADC_LOG",
    "QADC_LOG_TO_CONSOLE",
    "QADC_WORKERS",
    "QADC_EXACT_DIM_LIMIT",
    "QADC_ALPHA_GRID",
)


# Fixture for mocked os
@pytest.fixture
def mock_os(monkeypatch):
    """Mock directory creation and permission changes."""
    monkeypatch.setattr(os, "makedirs", MagicMock())
    monkeypatch.setattr(os, "chmod", MagicMock())
    return os


# Fixture for mocked home paths
@pytest.fixture
def mock_paths(monkeypatch):
    """Point ~ at /home/user."""

    def mock_expanduser(path):
        if path.startswith("~/"):
            return "/home/user/" + path[2:]
        return path

    monkeypatch.setattr(os.path, "expanduser", mock_expanduser)
    importlib.reload(paths)
    return {"CLI_PATH": "/home/user/.qadc", "ENV_PATH": "/home/user/.qadc/.env"}


@pytest.fixture
def clean_env(monkeypatch):
    """Remove every QADC_* variable and skip .env loading."""
    for key in ENV_KEYS:
        monkeypatch.delenv(key, raising=False)
    monkeypatch.setattr("qadc.config.config.load_env", lambda: False)


# Test load_env with dotenv available
def test_load_env_success(mock_os, mock_paths):
    """Test load_env creates ~/.qadc and loads both .env files."""
    with patch("dotenv.load_dotenv") as mock_load_dotenv:
        assert load_env() is True

        mock_os.makedirs.assert_called_once_with(mock_paths["CLI_PATH"], exist_ok=True)
        mock_os.chmod.assert_called_once_with(mock_paths["CLI_PATH"], 0o770)
        mock_load_dotenv.assert_any_call()
        mock_load_dotenv.assert_any_call(mock_paths["ENV_PATH"])


# Test load_env with dotenv unavailable
def test_load_env_no_dotenv(mock_os, mock_paths, monkeypatch):
    """Test load_env when python-dotenv is not installed."""
    monkeypatch.setitem(sys.modules, "dotenv", None)
    assert load_env() is False
    mock_os.makedirs.assert_not_called()


def test_load_env_directory_error(mock_os, mock_paths, capsys):
    """Test that a failing makedirs is reported and loading continues."""
    with patch("dotenv.load_dotenv") as mock_load_dotenv:
        mock_os.makedirs.side_effect = OSError("Permission denied")
        assert load_env() is True
        mock_os.chmod.assert_not_called()
        mock_load_dotenv.assert_any_call(mock_paths["ENV_PATH"])
    assert "Warning: Failed to create" in capsys.readouterr().out


def test_config_defaults(clean_env):
    """Test Config defaults when no variables are set."""
    config = Config()
    assert config.log_file == paths.get_log_path()
    assert config.log_level == "WARNING"
    assert config.log_to_console is False
    assert config.workers == 1
    assert config.exact_dim_limit == 64
    assert config.alpha_grid == parse_alpha_grid(DEFAULT_ALPHA_GRID)
    assert len(config.alpha_grid) == 9


def test_config_from_environment(clean_env, monkeypatch):
    """Test Config reads every QADC_* variable."""
    monkeypatch.setenv("QADC_LOG_FILE", "/tmp/run.log")
    monkeypatch.setenv("QADC_LOG", "DEBUG")
    monkeypatch.setenv("QADC_LOG_TO_CONSOLE", "TRUE")
    monkeypatch.setenv("QADC_WORKERS", "4")
    monkeypatch.setenv("QADC_EXACT_DIM_LIMIT", "128")
    monkeypatch.setenv("QADC_ALPHA_GRID", "0.1, 0.2")

    config = Config()
    assert config.log_file == "/tmp/run.log"
    assert config.log_level == "DEBUG"
    assert config.log_to_console is True
    assert config.workers == 4
    assert config.exact_dim_limit == 128
    assert config.alpha_grid == (0.1, 0.2)


def test_parse_alpha_grid_skips_blanks():
    """Test that empty entries are ignored and bad entries raise ValueError."""
    assert parse_alpha_grid("0.1,,0.3,") == (0.1, 0.3)
    with pytest.raises(ValueError):
        parse_alpha_grid("0.1,x")


@pytest.mark.parametrize(
    "key, value",
    [("QADC_WORKERS", "many"), ("QADC_EXACT_DIM_LIMIT", "6.5"), ("QADC_ALPHA_GRID", "0.1,x")],
)
def test_config_rejects_malformed_numbers(clean_env, monkeypatch, key, value):
    """Test that an unparsable numeric variable raises UsageError naming it."""
    monkeypatch.setenv(key, value)
    with pytest.raises(UsageError, match=key) as exc_info:
        Config()
    assert exc_info.value.exit_code == 2
