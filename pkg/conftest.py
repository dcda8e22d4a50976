import numpy as np
import pytest

from hypwave.config import Config
from hypwave.schemas.synth_schema import RngSpec
from hypwave.services.field_core import SampledField, make_grid


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size experiment runs (deselect with -m 'not slow')")


@pytest.fixture
def rng():
    return RngSpec(seed=20240611)


@pytest.fixture
def random_field():
    """Random real (or complex) field on a (d, J) grid, reproducible per seed."""

    def make(d, J, seed=0, complex_values=False):
        generator = RngSpec(seed=seed).generator()
        grid = make_grid(d, J)
        values = generator.standard_normal(grid.shape)
        if complex_values:
            values = values + 1j * generator.standard_normal(grid.shape)
        return SampledField(grid, values, not complex_values)

    return make


@pytest.fixture
def thresholds(monkeypatch):
    """Lets a test tighten or loosen experiment thresholds without leaking them."""

    def set_threshold(name, value):
        monkeypatch.setattr(Config, name, value)

    return set_threshold


@pytest.fixture
def tone():
    """exp(2 pi i <m, x>) sampled on a grid."""

    def make(grid, m):
        phase = sum(mi * x for mi, x in zip(m, grid.mesh()))
        return SampledField(grid, np.exp(2j * np.pi * phase))

    return make
