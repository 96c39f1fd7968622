# tests/conftest.py

import os
import sys
from pathlib import Path

import numpy as np
import pytest

ROOT_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
sys.path.insert(0, ROOT_DIR)

FIXTURES_DIR = Path(__file__).resolve().parent / "fixtures"


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def dim() -> int:
    return 8192


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES_DIR
