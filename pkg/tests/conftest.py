import math

import numpy as np
import pytest

from thermal_werner.states import DensityMatrix


def random_density(rng, rank=4):
    A = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    m = A @ A.conj().T
    return DensityMatrix(m / np.trace(m).real)


def random_x_state(rng):
    p = rng.dirichlet(np.ones(4))
    bound = math.sqrt(p[1] * p[2])
    c = rng.uniform(0, 1) * bound * np.exp(1j * rng.uniform(0, 2 * math.pi))
    m = np.diag(p).astype(complex)
    m[1, 2] = c
    m[2, 1] = np.conj(c)
    return DensityMatrix(m)


def random_unitary(rng, n=2):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
