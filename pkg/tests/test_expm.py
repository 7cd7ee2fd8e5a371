import numpy as np
import pytest
import scipy.linalg

from thermal_werner.expm import expm
from thermal_werner.lindblad import ReservoirParams, build_liouvillian


def test_diagonal_matrix_exact():
    d = np.array([-3.0, 0.5, 2.0 + 1j])
    assert np.allclose(expm(np.diag(d)), np.diag(np.exp(d)), rtol=1e-14)


def test_nilpotent_jordan_block():
    J = np.array([[0.0, 1.0], [0.0, 0.0]])
    assert np.array_equal(expm(J), np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_rotation_generator():
    t = 2.7
    A = np.array([[0.0, -t], [t, 0.0]])
    R = np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]])
    assert np.max(np.abs(expm(A) - R)) <= 1e-14


@pytest.mark.parametrize("scale", [1e-4, 0.01, 0.2, 0.9, 2.0, 5.0, 50.0, 1e3])
def test_matches_scipy_on_random_complex(scale):
    rng = np.random.default_rng(int(scale * 1000) % 997)
    A = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    A *= scale / np.linalg.norm(A, 1)
    # make it dissipative so exp stays bounded for the large scales
    A -= scale * np.eye(16)
    ref = scipy.linalg.expm(A)
    assert np.max(np.abs(expm(A) - ref)) <= 1e-11 * max(1.0, np.max(np.abs(ref)))


@pytest.mark.parametrize("t", [0.01, 1.0, 50.0, 200.0])
def test_liouvillian_propagators_match_scipy(t):
    L = build_liouvillian(ReservoirParams(G=0.7, beta=0.8, Omega=0.4)).mat
    assert np.max(np.abs(expm(L * t) - scipy.linalg.expm(L * t))) <= 1e-11


def test_zero_matrix():
    assert np.array_equal(expm(np.zeros((3, 3))), np.eye(3))


def test_rejects_non_square():
    with pytest.raises(ValueError):
        expm(np.zeros((2, 3)))
