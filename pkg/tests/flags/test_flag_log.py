from argparse import Namespace
from unittest.mock import MagicMock

import pytest

from qadc.core.context import Context
from qadc.core.log_manager import LogManager
from qadc.flags.flag_log import clear_log, show_log


# Fixture for a context with a mocked LogManager
@pytest.fixture
def context():
    """Provide a context whose LogManager is a mock."""
    return Context(MagicMock(), MagicMock(spec=LogManager))


def test_show_log(context):
    """Test that --log delegates to LogManager.show."""
    show_log(Namespace(log=True), context)
    context.log_manager.show.assert_called_once_with()


def test_clear_log(context):
    """Test that --clear-log delegates to LogManager.clear."""
    clear_log(Namespace(clear_log=True), context)
    context.log_manager.clear.assert_called_once_with()
