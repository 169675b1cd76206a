"""
Shared fixtures for the austere-kit test suite
"""

import numpy as np
import pytest

from austere_kit.catalog import get_entry
from austere_kit.core.immersion import SamplingPlan


@pytest.fixture
def rng():
    """Seeded generator so every test draws the same numbers"""
    return np.random.default_rng(20240521)


@pytest.fixture(scope="session")
def rp2():
    return get_entry("rp2")


@pytest.fixture(scope="session")
def conic():
    return get_entry("conic")


@pytest.fixture(scope="session")
def cp1():
    return get_entry("cp1_in_cp2")


@pytest.fixture(scope="session")
def great_circle():
    return get_entry("great_circle")


@pytest.fixture(scope="session")
def small_circle():
    return get_entry("small_circle")


@pytest.fixture(scope="session")
def torus():
    return get_entry("torus")


@pytest.fixture
def quick_plan():
    """Coarse plan for surfaces: 3 x 3 points, 4 + 2 normals"""
    return SamplingPlan(grid=(3, 3), normals=4, random_normals=2)


def random_unit(rng: np.random.Generator, size: int) -> np.ndarray:
    v = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return v / np.linalg.norm(v)


def random_symmetric(rng: np.random.Generator, k: int) -> np.ndarray:
    a = rng.standard_normal((k, k))
    return 0.5 * (a + a.T)
