"""
TorsionLab - Shared test fixtures
"""

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from torsionlab.config import setup_logging  # noqa: E402
from torsionlab.workbench import FixtureSpec, gen_complex, gen_spectrum, toy_complex  # noqa: E402

setup_logging("WARNING")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def toy():
    """d = 1 complex with a = 2"""
    return toy_complex(2.0)


@pytest.fixture(params=[3, 5])
def random_complex(request):
    return gen_complex(FixtureSpec(kind="random-acyclic-complex", d=request.param, seed=42))


@pytest.fixture(params=[(3, 0.0), (5, 0.0), (3, 0.1)])
def hermitian_complex(request):
    d, epsilon = request.param
    return gen_complex(FixtureSpec(kind="hermitian-model-complex", d=d, seed=11, epsilon=epsilon))


@pytest.fixture
def cohomology_complex():
    return gen_complex(FixtureSpec(kind="random-acyclic-complex", d=3, betti=[0, 1, 1, 0], seed=5))


@pytest.fixture
def spectrum_d3():
    return gen_spectrum(FixtureSpec(kind="synthetic-spectrum", d=3, classes=5, seed=7))


@pytest.fixture
def spectrum_d5():
    return gen_spectrum(FixtureSpec(kind="synthetic-spectrum", d=5, classes=5, seed=7))
