import io

import colorama
import pytest

from src.core import logging as app_logging
from src.core.config import override_settings


class Terminal(io.StringIO):
    def isatty(self) -> bool:
        return True


@pytest.fixture
def restore_logging():
    yield
    app_logging.setup_logging()


@pytest.mark.parametrize("tty, expected", [(True, 1), (False, 0)])
def test_console_colours_prepare_the_terminal(restore_logging, monkeypatch, tty, expected):
    calls = []
    monkeypatch.setattr(colorama, "just_fix_windows_console", lambda: calls.append(True))
    monkeypatch.setattr(app_logging.sys, "stderr", Terminal() if tty else io.StringIO())
    with override_settings(log_format="console"):
        app_logging.setup_logging()
    assert len(calls) == expected


def test_floats_are_rounded_to_significant_digits():
    event = app_logging.round_floats(None, "info", {"q_star": 0.40582743167, "d": 4})
    assert event == {"q_star": 0.405827432, "d": 4}
