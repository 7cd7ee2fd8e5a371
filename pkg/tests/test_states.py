import math

import numpy as np
import pytest

from thermal_werner.errors import ConstraintError, DomainError, StateFormatError, ValidationError
from thermal_werner.states import (
    COLLECTIVE_U,
    Basis,
    Collective,
    DensityMatrix,
    EtaState,
    Gibbs,
    MaxEnt,
    Product,
    Raw,
    XClass,
    change_basis,
    fidelity_singlet,
    make_state,
    maxent_projector,
    qubit,
    validate_density,
    write_matrix_file,
)

from conftest import random_density


def collective(label):
    i = "esag".index(label)
    m = np.zeros((4, 4), dtype=complex)
    m[i, i] = 1
    return DensityMatrix(m, Basis.COLLECTIVE)


def test_change_of_basis_is_unitary():
    assert np.max(np.abs(COLLECTIVE_U.conj().T @ COLLECTIVE_U - np.eye(4))) <= 1e-14


def test_singlet_in_canonical_basis():
    m = change_basis(collective("a"), Basis.CANONICAL).mat
    expected = np.zeros((4, 4))
    expected[1, 1] = expected[2, 2] = 0.5
    expected[1, 2] = expected[2, 1] = -0.5
    assert np.allclose(m, expected, atol=1e-15)


def test_excited_is_11():
    m = change_basis(collective("e"), Basis.CANONICAL).mat
    expected = np.zeros((4, 4))
    expected[0, 0] = 1
    assert np.array_equal(m, expected)


def test_round_trip_and_spectrum(rng):
    for _ in range(100):
        rho = random_density(rng)
        col = change_basis(rho, Basis.COLLECTIVE)
        back = change_basis(col, Basis.CANONICAL)
        assert np.max(np.abs(back.mat - rho.mat)) <= 1e-14
        assert abs(np.trace(col.mat) - np.trace(rho.mat)) <= 1e-13
        assert np.max(np.abs(col.mat - col.mat.conj().T)) <= 1e-13
        assert np.allclose(np.linalg.eigvalsh(col.mat), np.linalg.eigvalsh(rho.mat), atol=1e-13)


def test_matrix_algebra_adjoint(rng):
    A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    B = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    assert np.max(np.abs((A @ B).conj().T - B.conj().T @ A.conj().T)) <= 1e-13


@pytest.mark.parametrize("label,F", [("a", 1.0), ("s", 0.0), ("e", 0.0), ("g", 0.0)])
def test_fidelity_of_collective_states(label, F):
    rho = make_state(Collective(label))
    assert fidelity_singlet(rho) == pytest.approx(F, abs=1e-15)
    assert fidelity_singlet(change_basis(rho, Basis.COLLECTIVE)) == pytest.approx(F, abs=1e-15)


def test_product_fidelity_matches_overlap(rng):
    for _ in range(100):
        ang = rng.uniform(0, 2 * math.pi, size=4)
        spec = Product(*ang)
        alpha = abs(np.vdot(qubit(ang[0], ang[1]), qubit(ang[2], ang[3])))
        assert fidelity_singlet(make_state(spec)) == pytest.approx((1 - alpha**2) / 2, abs=1e-12)
        assert spec.overlap == pytest.approx(alpha, abs=1e-15)


def test_gibbs_fidelity():
    for t0 in (0.3, 1.0, 4.0):
        y = math.exp(-1 / t0)
        assert fidelity_singlet(make_state(Gibbs(t0))) == pytest.approx(y / (1 + y) ** 2, abs=1e-14)


def test_gibbs_limits():
    hot = make_state(Gibbs(1e300)).mat
    assert np.allclose(hot, np.eye(4) / 4, atol=1e-14)
    cold = make_state(Gibbs(0.0)).mat
    assert cold[3, 3] == 1.0 and np.trace(cold).real == 1.0


def test_maxent_singlet_corner():
    rho = make_state(MaxEnt(0.0, math.pi, 0.0))
    assert fidelity_singlet(rho) == pytest.approx(1.0, abs=1e-15)


def test_maxent_fidelity_grid():
    for a in np.linspace(0, 1, 10):
        for t1 in np.linspace(0, 2 * math.pi, 10):
            for t2 in np.linspace(0, 2 * math.pi, 10):
                F = fidelity_singlet(make_state(MaxEnt(a, t1, t2)))
                assert F == pytest.approx(0.5 * (1 - a * a) * (1 - math.cos(t1 - t2)), abs=1e-12)


def test_maxent_projectors_idempotent(rng):
    for _ in range(200):
        a, t1, t2 = rng.uniform(0, 1), rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi)
        P = maxent_projector(a, t1, t2)
        assert np.max(np.abs(P @ P - P)) <= 1e-12
        assert np.max(np.abs(P - P.conj().T)) <= 1e-15


def test_eta_state_is_x_class():
    # expanding |psi><psi| for eta = 3pi/4 by hand: diag 1/2, coherence -1/2
    rho = make_state(EtaState(3 * math.pi / 4)).mat
    x = XClass(0.5, 1 - 1e-15)  # z = 1 sits on the closed constraint boundary
    assert rho[1, 1].real == pytest.approx(0.5, abs=1e-15)
    assert rho[2, 2].real == pytest.approx(0.5, abs=1e-15)
    assert rho[1, 2].real == pytest.approx(-0.5, abs=1e-15)
    assert np.allclose(rho, make_state(x).mat, atol=1e-14)


def test_eta_state_general():
    for eta in np.linspace(1.6, 3.1, 7):
        rho = make_state(EtaState(eta)).mat
        assert rho[1, 1].real == pytest.approx(math.sin(eta) ** 2)
        assert rho[1, 2].real == pytest.approx(-abs(math.sin(2 * eta)) / 2)


def test_xclass_constraint():
    XClass(0.5, 0.99)
    with pytest.raises(ConstraintError):
        XClass(0.9, 0.99)
    with pytest.raises(DomainError):
        XClass(0.0, 0.5)


def test_validate_density():
    d = validate_density(DensityMatrix(np.eye(4) / 4))
    assert d.trace_err == 0 and d.herm_err == 0 and d.min_eig == pytest.approx(0.25, abs=1e-16)
    d = validate_density(make_state(Collective("a")))
    assert abs(d.min_eig) <= 1e-15
    d = validate_density(DensityMatrix(np.eye(4) * 0.99 / 4))
    assert d.trace_err == pytest.approx(0.01)
    with pytest.raises(ValidationError):
        DensityMatrix(np.eye(4) * 0.99 / 4).require_valid()


def test_validate_does_not_mutate():
    m = np.eye(4) / 4
    rho = DensityMatrix(m)
    validate_density(rho)
    assert np.array_equal(rho.mat, m)
    with pytest.raises(ValueError):
        rho.mat[0, 0] = 1


def test_raw_round_trip(tmp_path, rng):
    rho = random_density(rng)
    path = tmp_path / "rho.txt"
    write_matrix_file(rho, path)
    loaded = make_state(Raw(str(path)))
    assert np.max(np.abs(loaded.mat - rho.mat)) <= 1e-15


def test_raw_file_format(tmp_path):
    path = tmp_path / "a.txt"
    path.write_text("0 0 0 0\n0 0.5+0j -0.5+0j 0\n0 -0.5 0.5 0j\n0 0 0 0\n")
    assert fidelity_singlet(make_state(Raw(str(path)))) == pytest.approx(1.0)
    path.write_text("1 0 0\n0 0 0\n")
    with pytest.raises(StateFormatError):
        make_state(Raw(str(path)))
    path.write_text("1 0 0 0\n0 1 0 0\n0 0 0 0\n0 0 0 0\n")
    with pytest.raises(StateFormatError):
        make_state(Raw(str(path)))
    with pytest.raises(StateFormatError):
        make_state(Raw(str(tmp_path / "missing.txt")))
