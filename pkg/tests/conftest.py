from __future__ import annotations

import numpy as np
import pytest

from src.config.settings import Settings, load_settings
from src.models.instance import CnfInstance, Graph


@pytest.fixture(scope="session")
def settings() -> Settings:
    return load_settings()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def mc_sigmas(settings: Settings) -> float:
    return settings.harness.mc_tolerance_sigmas


@pytest.fixture
def small_cnf() -> CnfInstance:
    # satisfiable: x1 = x2 = x3 = 1 works
    return CnfInstance(
        num_vars=4,
        clauses=((1, 2, 3), (-1, 2, 4), (1, -3, 4), (-2, 3, -4), (2, 3, 4)),
        k=3,
    )


@pytest.fixture
def triangle() -> Graph:
    return Graph(num_vertices=3, edges=((1, 2), (1, 3), (2, 3)))


@pytest.fixture
def k4() -> Graph:
    return Graph(num_vertices=4, edges=((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)))
