"""
Shared fixtures for the quintessa test suite.
"""

import os
import sys
from pathlib import Path

import pytest

from quintessa import config  # noqa: F401  (loads .env before the oracle command is read)
from quintessa.cyclo5 import CycInt
from quintessa.splitting import PrimeK0

TESTS_DIR = Path(__file__).parent
FAKE_ORACLE = TESTS_DIR / "fake_oracle.py"

# A real oracle, when the developer has one configured.
REAL_ORACLE_COMMAND = os.environ.get("QUINTESSA_ORACLE_COMMAND")


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch, tmp_path):
    """Keep tests away from the user's oracle and cache."""
    monkeypatch.delenv("QUINTESSA_ORACLE_COMMAND", raising=False)
    monkeypatch.delenv("QUINTESSA_DEBUG_MODE", raising=False)
    monkeypatch.delenv("QUINTESSA_VERBOSE", raising=False)
    monkeypatch.setenv("QUINTESSA_ORACLE_CACHE", str(tmp_path / "oracle_cache.tsv"))
    yield


@pytest.fixture
def pi1_19() -> PrimeK0:
    return PrimeK0(CycInt(3, 0, 4, 4), 19, 2)


@pytest.fixture
def pi2_19() -> PrimeK0:
    return PrimeK0(CycInt(1, 0, 4, 4), 19, 2)


@pytest.fixture
def fake_oracle(tmp_path):
    """Build a command line for the fake oracle; returns (command_factory, log_path)."""
    log_path = tmp_path / "oracle_requests.log"

    def command(mode: str = "ok") -> str:
        return f'"{sys.executable}" "{FAKE_ORACLE}" --mode {mode} --log "{log_path}"'

    return command, log_path


@pytest.fixture
def logged_requests():
    """Read the requests a fake oracle actually received."""

    def read(log_path: Path) -> list:
        if not log_path.exists():
            return []
        return log_path.read_text(encoding="utf-8").splitlines()

    return read
