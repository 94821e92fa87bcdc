import json
from pathlib import Path

import pytest

from src.main import main

ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture(scope="session")
def repo_root() -> Path:
    return ROOT


@pytest.fixture(scope="session")
def id3x3_path() -> Path:
    return ROOT / "data" / "id3x3.json"


@pytest.fixture(scope="session")
def verdict_schema() -> dict:
    return json.loads((ROOT / "schemas" / "verdict.schema.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def channel_schema() -> dict:
    return json.loads((ROOT / "schemas" / "channel.schema.json").read_text(encoding="utf-8"))


@pytest.fixture
def cli(capsys):
    """Run the CLI in-process; returns (exit code, stdout)."""

    def run(*args: str) -> tuple[int, str]:
        code = main([str(a) for a in args])
        return code, capsys.readouterr().out

    return run
