import numpy as np
import pytest

X = np.array([1.0, 0.0, 0.0])
Y = np.array([0.0, 1.0, 0.0])
Z = np.array([0.0, 0.0, 1.0])


def random_unit(rng: np.random.Generator) -> np.ndarray:
    while True:
        v = rng.normal(size=3)
        norm = np.sqrt(v @ v)
        if norm > 1e-6:
            return v / norm


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260810)
