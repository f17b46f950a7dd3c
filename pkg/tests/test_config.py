import logging

import pytest
from pydantic import ValidationError

from sek3.core.config import Settings
from sek3.core.errors import (
    DimensionMismatchError,
    NotPSDError,
    RankDeficientError,
    Sek3Error,
    check_same_k,
)
from sek3.core.logging import configure_logging


def test_defaults():
    s = Settings(_env_file=None)
    assert s.SMALL_ANGLE == 1e-4
    assert s.ADJOINT_SMALL_ANGLE == 1e-3
    assert s.GN_MAX_HALVINGS == 20
    assert s.GN_CONDITION_LIMIT == 1e12
    assert s.LOG_LEVEL == "WARNING"


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("SEK3_SMALL_ANGLE", "1e-5")
    monkeypatch.setenv("SEK3_LOG_LEVEL", "debug")
    monkeypatch.setenv("SEK3_SAMPLE_CHUNK", "256")
    s = Settings(_env_file=None)
    assert s.SMALL_ANGLE == 1e-5
    assert s.LOG_LEVEL == "DEBUG"
    assert s.SAMPLE_CHUNK == 256


@pytest.mark.parametrize("value", ["0", "-3"])
def test_sample_chunk_must_be_positive(monkeypatch, value):
    monkeypatch.setenv("SEK3_SAMPLE_CHUNK", value)
    with pytest.raises(ValidationError):
        Settings(_env_file=None)


def test_error_hierarchy():
    assert issubclass(DimensionMismatchError, ValueError)
    assert issubclass(NotPSDError, Sek3Error)
    err = RankDeficientError("singular", condition=1e17)
    assert isinstance(err, ArithmeticError)
    assert err.condition == 1e17


def test_check_same_k():
    assert check_same_k(2, 2, 2) == 2
    with pytest.raises(DimensionMismatchError):
        check_same_k(1, 2, what="blocks")


def test_configure_logging_installs_one_handler():
    configure_logging("info")
    configure_logging("debug")
    logger = logging.getLogger("sek3")
    assert logger.level == logging.DEBUG
    assert sum(getattr(h, "_sek3", False) for h in logger.handlers) == 1
    assert logger.propagate is False
