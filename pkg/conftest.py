"""
Shared pytest fixtures. The repo root goes on sys.path so `config` and
`supergrade` import the same way main.py imports them.
"""

import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from config import DEFAULT_SEED  # noqa: E402
from supergrade import catalog  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full scenario reruns and large-dimension sweeps")


@pytest.fixture
def rng():
    return random.Random(DEFAULT_SEED)


@pytest.fixture
def model_3_4():
    return catalog.model(3, 4)


@pytest.fixture
def ng_3_3():
    return catalog.ng_law(3, 3)


@pytest.fixture
def remark_algebra():
    return catalog.remark_example()
