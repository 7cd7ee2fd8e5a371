"""Two-qubit density matrices, basis handling and initial-state families.

Canonical ordering is |11>, |10>, |01>, |00> (first factor is atom A,
|1> excited).  Collective ordering is |e>, |s>, |a>, |g> with

    |e> = |11>,  |g> = |00>,
    |s> = (|10> + |01>)/sqrt(2),  |a> = (|10> - |01>)/sqrt(2).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Union

import numpy as np

from .errors import ConstraintError, DomainError, StateFormatError, ValidationError

HERM_TOL = 1e-12
TRACE_TOL = 1e-12
EIG_TOL = 1e-10

_R2 = 1.0 / math.sqrt(2.0)

# Columns are |e>, |s>, |a>, |g> written in the canonical basis.
COLLECTIVE_U = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, _R2, _R2, 0.0],
        [0.0, _R2, -_R2, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ],
    dtype=complex,
)

SINGLET = COLLECTIVE_U[:, 2].copy()

COLLECTIVE_LABELS = ("e", "s", "a", "g")


class Basis(enum.Enum):
    CANONICAL = "canonical"
    COLLECTIVE = "collective"


def _frozen(mat) -> np.ndarray:
    arr = np.array(mat, dtype=complex)
    if arr.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {arr.shape}")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A 4x4 two-qubit operator tagged with the basis it is written in.

    Construction does not enforce the density-matrix invariants; use
    :func:`validate_density` or :meth:`require_valid` for that.
    """

    mat: np.ndarray
    basis: Basis = Basis.CANONICAL

    def __post_init__(self):
        object.__setattr__(self, "mat", _frozen(self.mat))

    @classmethod
    def pure(cls, psi, basis: Basis = Basis.CANONICAL) -> "DensityMatrix":
        psi = np.asarray(psi, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()), basis)

    @property
    def canonical(self) -> np.ndarray:
        return change_basis(self, Basis.CANONICAL).mat

    @property
    def collective(self) -> np.ndarray:
        return change_basis(self, Basis.COLLECTIVE).mat

    def element(self, ket: str, bra: str) -> complex:
        """Collective-basis matrix element, e.g. ``rho.element("e", "s")``."""
        i = COLLECTIVE_LABELS.index(ket)
        j = COLLECTIVE_LABELS.index(bra)
        return complex(self.collective[i, j])

    def purity(self) -> float:
        m = self.mat
        return float(np.real(np.trace(m @ m)))

    def require_valid(
        self, herm_tol: float = HERM_TOL, trace_tol: float = TRACE_TOL, eig_tol: float = EIG_TOL
    ) -> "DensityMatrix":
        d = validate_density(self)
        if d.herm_err > herm_tol:
            raise ValidationError(f"matrix is not Hermitian (max deviation {d.herm_err:.3g})")
        if d.trace_err > trace_tol:
            raise ValidationError(f"trace differs from 1 by {d.trace_err:.3g}")
        if d.min_eig < -eig_tol:
            raise ValidationError(f"matrix has negative eigenvalue {d.min_eig:.3g}")
        return self

    def allclose(self, other: "DensityMatrix", atol: float) -> bool:
        return bool(np.max(np.abs(self.canonical - other.canonical)) <= atol)


class Diagnostics(NamedTuple):
    trace_err: float
    herm_err: float
    min_eig: float


def validate_density(rho: DensityMatrix) -> Diagnostics:
    """Residuals of the three density-matrix invariants."""
    m = rho.mat
    herm_err = float(np.max(np.abs(m - m.conj().T)))
    trace_err = float(abs(np.trace(m) - 1.0))
    min_eig = float(np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0])
    return Diagnostics(trace_err, herm_err, min_eig)


def change_basis(rho: DensityMatrix, target: Basis) -> DensityMatrix:
    if rho.basis is target:
        return rho
    U = COLLECTIVE_U
    if target is Basis.CANONICAL:
        return DensityMatrix(U @ rho.mat @ U.conj().T, Basis.CANONICAL)
    return DensityMatrix(U.conj().T @ rho.mat @ U, Basis.COLLECTIVE)


def fidelity_singlet(rho: DensityMatrix) -> float:
    """Overlap <a|rho|a> with the antisymmetric (singlet) state."""
    if rho.basis is Basis.COLLECTIVE:
        return float(rho.mat[2, 2].real)
    return float(np.real(SINGLET.conj() @ rho.mat @ SINGLET))


def gibbs_state(beta_omega: float) -> DensityMatrix:
    """Thermal state exp(-beta H0)/Z of the free two-atom Hamiltonian.

    ``beta_omega`` may be 0 (maximally mixed) or ``math.inf`` (|00>).
    """
    if beta_omega < 0 or math.isnan(beta_omega):
        raise DomainError(f"beta*omega must be >= 0, got {beta_omega}")
    y = math.exp(-beta_omega)  # exp(-inf) == 0.0
    z = (1.0 + y) ** 2
    return DensityMatrix(np.diag([y * y / z, y / z, y / z, 1.0 / z]), Basis.CANONICAL)


def qubit(theta: float, phi: float) -> np.ndarray:
    """cos(theta)|0> + exp(i phi) sin(theta)|1>, in the (|1>, |0>) ordering."""
    return np.array([np.exp(1j * phi) * math.sin(theta), math.cos(theta)], dtype=complex)


def maxent_projector(a: float, theta1: float, theta2: float) -> np.ndarray:
    """Three-parameter family of maximally entangled projectors."""
    b2 = 1.0 - a * a
    c = a * math.sqrt(b2)
    a2 = a * a
    e1 = np.exp(1j * theta1)
    e2 = np.exp(1j * theta2)
    m = np.array(
        [
            [a2, c / e1, c / e2, -a2 / (e1 * e2)],
            [c * e1, b2, b2 * e1 / e2, -c / e2],
            [c * e2, b2 * e2 / e1, b2, -c / e1],
            [-a2 * e1 * e2, -c * e2, -c * e1, a2],
        ],
        dtype=complex,
    )
    return 0.5 * m


# --- initial-state specifications -------------------------------------------


@dataclass(frozen=True)
class Collective:
    label: str  # one of "e", "s", "a", "g"

    def __post_init__(self):
        if self.label not in COLLECTIVE_LABELS:
            raise DomainError(f"unknown collective state {self.label!r}")


@dataclass(frozen=True)
class Product:
    """Pure product of two Bloch-angle qubits."""

    theta_a: float
    phi_a: float
    theta_b: float
    phi_b: float

    @property
    def overlap(self) -> float:
        """|<phi|psi>| between the two factor vectors."""
        return float(abs(np.vdot(qubit(self.theta_a, self.phi_a), qubit(self.theta_b, self.phi_b))))


@dataclass(frozen=True)
class Gibbs:
    temperature: float  # T0 / omega

    def __post_init__(self):
        if not self.temperature >= 0:
            raise DomainError(f"temperature must be >= 0, got {self.temperature}")

    @property
    def beta_omega(self) -> float:
        return math.inf if self.temperature == 0 else 1.0 / self.temperature


@dataclass(frozen=True)
class MaxEnt:
    a: float
    theta1: float
    theta2: float

    def __post_init__(self):
        if not 0.0 <= self.a <= 1.0:
            raise DomainError(f"a must lie in [0, 1], got {self.a}")
        for name in ("theta1", "theta2"):
            v = getattr(self, name)
            if not 0.0 <= v <= 2 * math.pi:
                raise DomainError(f"{name} must lie in [0, 2pi], got {v}")

    @property
    def theta(self) -> float:
        return self.theta1 - self.theta2


@dataclass(frozen=True)
class XClass:
    x: float
    z: float

    def __post_init__(self):
        for name in ("x", "z"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise DomainError(f"{name} must lie in (0, 1), got {v}")
        if self.z * self.z / 4.0 > self.x * (1.0 - self.x):
            raise ConstraintError(
                f"x-class state requires z^2/4 <= x(1-x); got z={self.z}, x={self.x}"
            )


@dataclass(frozen=True)
class EtaState:
    eta: float

    def __post_init__(self):
        if not math.pi / 2 < self.eta < math.pi:
            raise DomainError(f"eta must lie in (pi/2, pi), got {self.eta}")


@dataclass(frozen=True)
class Raw:
    path: str


StateSpec = Union[Collective, Product, Gibbs, MaxEnt, XClass, EtaState, Raw]


def make_state(spec: StateSpec) -> DensityMatrix:
    """Build the canonical-basis density matrix described by ``spec``."""
    match spec:
        case Collective(label):
            rho = DensityMatrix.pure(COLLECTIVE_U[:, COLLECTIVE_LABELS.index(label)])
        case Product(ta, pa, tb, pb):
            rho = DensityMatrix.pure(np.kron(qubit(ta, pa), qubit(tb, pb)))
        case Gibbs():
            rho = gibbs_state(spec.beta_omega)
        case MaxEnt(a, t1, t2):
            rho = DensityMatrix(maxent_projector(a, t1, t2))
        case XClass(x, z):
            m = np.zeros((4, 4), dtype=complex)
            m[1, 1] = x
            m[2, 2] = 1.0 - x
            m[1, 2] = m[2, 1] = -z / 2.0
            rho = DensityMatrix(m)
        case EtaState(eta):
            # cos(eta)|01> + sin(eta)|10>
            rho = DensityMatrix.pure([0.0, math.sin(eta), math.cos(eta), 0.0])
        case Raw(path):
            rho = load_matrix_file(path)
        case _:
            raise TypeError(f"not a state spec: {spec!r}")
    return rho.require_valid()


def load_matrix_file(path: str | Path) -> DensityMatrix:
    """Read a canonical-basis matrix: 4 lines of 4 complex entries (``re+imj``)."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise StateFormatError(f"cannot read {path}: {exc}") from exc
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if len(rows) != 4 or any(len(r) != 4 for r in rows):
        raise StateFormatError(f"{path}: expected 4 lines of 4 entries")
    try:
        m = np.array([[complex(tok) for tok in r] for r in rows])
    except ValueError as exc:
        raise StateFormatError(f"{path}: {exc}") from exc
    if not np.all(np.isfinite(m)):
        raise StateFormatError(f"{path}: non-finite entry")
    rho = DensityMatrix(m)
    try:
        return rho.require_valid()
    except ValidationError as exc:
        raise StateFormatError(f"{path}: not a density matrix: {exc}") from exc


def write_matrix_file(rho: DensityMatrix, path: str | Path) -> None:
    lines = []
    for row in rho.canonical:
        lines.append(" ".join(f"{float(v.real)!r}{float(v.imag):+}j" for v in row))
    Path(path).write_text("\n".join(lines) + "\n")
