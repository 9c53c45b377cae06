import numpy as np
import pytest

from polmax.geometry import DomainSpec, PhysicalParams, build_grid, validate_domain


@pytest.fixture
def unit_cube():
    """Symmetric unit cube, eps = mu = 1."""
    dom = DomainSpec(1.0, 1.0, 0.5, 0.5)
    par = PhysicalParams(1.0, 1.0, np.sqrt(5.0))
    return validate_domain(dom, par)


@pytest.fixture
def unit_grid(unit_cube):
    return build_grid(unit_cube, 8, 8, 8)


@pytest.fixture
def asym():
    """Asymmetric interface position, off-resonant frequency omega^2 = 5."""
    dom = DomainSpec(1.0, 1.0, 0.6, 0.4)
    par = PhysicalParams(1.0, 1.0, np.sqrt(5.0))
    return validate_domain(dom, par)


@pytest.fixture
def asym_grid(asym):
    return build_grid(asym, 8, 8, 9)


def rng(seed=0):
    return np.random.default_rng(seed)
