import numpy as np
import pytest

from app.config import AppConfig


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(autouse=True)
def _reset_config(monkeypatch):
    """Commands read AppConfig class attributes; keep every test on the defaults."""
    monkeypatch.delenv('RM_PMEPR_WORKERS', raising=False)
    monkeypatch.delenv('RM_PMEPR_LOG_LEVEL', raising=False)
    monkeypatch.setattr(AppConfig, 'WORKERS', 1)
    monkeypatch.setattr(AppConfig, 'LOG_LEVEL', 'WARNING')
