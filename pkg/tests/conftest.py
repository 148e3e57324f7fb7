"""Shared fixtures: a couple of small hand-checkable systems."""

import numpy as np
import pytest

import spandist as sd


@pytest.fixture
def system_b():
    """{(1,0,0), (1,1,0)} — the worked example used throughout."""
    return sd.VectorSystem.from_rows([[1.0, 0.0, 0.0], [1.0, 1.0, 0.0]])


@pytest.fixture
def x_b():
    return sd.vector([1.0, 1.0, 1.0])


def random_rows(rng: np.random.Generator, n: int, dim: int, field: sd.Field) -> np.ndarray:
    a = rng.standard_normal((n, dim))
    if field is sd.Field.COMPLEX:
        a = (a + 1j * rng.standard_normal((n, dim))) / np.sqrt(2.0)
    return a
