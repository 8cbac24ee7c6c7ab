"""
Shared test fixtures for lindbrand tests.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add the project root to path so the src package resolves
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import get_config
from src.randomness import SeedSpec
from src.states import pure_state


@pytest.fixture
def mock_env_vars(monkeypatch):
    """Set up a development environment with defaults"""
    monkeypatch.setenv("LINDBRAND_ENV", "development")
    monkeypatch.setenv("LINDBRAND_LOG_LEVEL", "DEBUG")
    monkeypatch.setenv("LINDBRAND_WORKERS", "1")
    monkeypatch.delenv("LINDBRAND_OUTPUT_DIR", raising=False)
    monkeypatch.delenv("LINDBRAND_REL_TOL", raising=False)
    get_config.cache_clear()
    yield
    get_config.cache_clear()


@pytest.fixture
def seed():
    """Fixed master seed for reproducible draws"""
    return SeedSpec(20240601)


@pytest.fixture
def rng(seed):
    """Generator on the root stream of the fixed seed"""
    return seed.generator()


@pytest.fixture
def pauli():
    """Pauli matrices x, y, z"""
    return {
        "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
        "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
        "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
    }


@pytest.fixture
def qubit_plus():
    """|+⟩⟨+| on a qubit"""
    return pure_state(np.array([1.0, 1.0]) / np.sqrt(2.0))


@pytest.fixture
def qubit_zero():
    """|0⟩⟨0| on a qubit"""
    return pure_state(np.array([1.0, 0.0]))


@pytest.fixture
def output_dir(tmp_path):
    """Empty directory for run outputs"""
    path = tmp_path / "results"
    return path
