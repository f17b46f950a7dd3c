import logging

import numpy as np
import pytest
from hypothesis import HealthCheck, settings as hypothesis_settings

hypothesis_settings.register_profile(
    "sek3",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
hypothesis_settings.load_profile("sek3")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(params=[0, 1, 2, 3], ids=lambda k: f"K{k}")
def k(request):
    return request.param


@pytest.fixture(params=[1, 2, 3], ids=lambda k: f"K{k}")
def k_pos(request):
    return request.param


@pytest.fixture(autouse=True)
def restore_sek3_logger():
    # the CLI installs a handler and stops propagation; undo it between tests
    logger = logging.getLogger("sek3")
    handlers, propagate, level = list(logger.handlers), logger.propagate, logger.level
    yield
    logger.handlers[:] = handlers
    logger.propagate = propagate
    logger.setLevel(level)
