import numpy as np
import pytest

from graffiti_lattice import CouplingParams, Lattice, SpinConfig


@pytest.fixture
def torus3():
    return Lattice.torus2d(3)


@pytest.fixture
def torus4():
    return Lattice.torus2d(4)


@pytest.fixture
def unit_params():
    return CouplingParams(j=1.0, k=1.0, alpha=1.0, lam=1.0)


def random_config(lattice, seed, g_scale=1.0):
    rng = np.random.default_rng(seed)
    eta = rng.integers(-1, 2, lattice.num_sites).astype(np.int8)
    g = g_scale * rng.standard_normal(lattice.num_sites)
    return SpinConfig(eta, g)
