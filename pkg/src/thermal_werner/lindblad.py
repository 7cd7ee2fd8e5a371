"""Lindblad generator for two atoms in a common thermal photon reservoir.

Density matrices are vectorised row-major (``rho.reshape(16)``), so that
``A @ rho @ B`` corresponds to ``kron(A, B.T) @ vec(rho)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegeneracyError, DomainError, NumericalFailure
from .expm import expm
from .states import (
    COLLECTIVE_LABELS,
    COLLECTIVE_U,
    SINGLET,
    Basis,
    DensityMatrix,
    fidelity_singlet,
    validate_density,
)

MIN_BETA_OMEGA = 1e-6
PROPAGATION_TOL = 1e-8
STEADY_T = 200.0

_SM = np.array([[0.0, 0.0], [1.0, 0.0]])  # |0><1| in the (|1>, |0>) ordering
_SP = _SM.T
_S3 = np.diag([1.0, -1.0])
_I2 = np.eye(2)
_I4 = np.eye(4)

SIGMA_MINUS = (np.kron(_SM, _I2), np.kron(_I2, _SM))
SIGMA_PLUS = (np.kron(_SP, _I2), np.kron(_I2, _SP))
SIGMA_3 = (np.kron(_S3, _I2), np.kron(_I2, _S3))


def mean_photon_number(beta_omega: float) -> float:
    """Thermal occupation exp(-x)/(1 - exp(-x)) at x = beta*omega."""
    if not beta_omega > 0:
        raise DomainError(f"beta*omega must be > 0, got {beta_omega}")
    if math.isinf(beta_omega):
        return 0.0
    return math.exp(-beta_omega) / -math.expm1(-beta_omega)


@dataclass(frozen=True)
class ReservoirParams:
    """Physical configuration of the atoms and the reservoir.

    ``beta`` is the inverse temperature; ``math.inf`` means T = 0.
    """

    omega: float = 1.0
    gamma0: float = 1.0
    G: float = 1.0
    Omega: float = 0.0
    beta: float = math.inf

    def __post_init__(self):
        if not self.omega > 0:
            raise DomainError(f"omega must be > 0, got {self.omega}")
        if not self.gamma0 > 0:
            raise DomainError(f"gamma0 must be > 0, got {self.gamma0}")
        if not 0.0 <= self.G <= 1.0:
            raise DomainError(f"G must lie in [0, 1], got {self.G}")
        if not math.isfinite(self.Omega):
            raise DomainError(f"Omega must be finite, got {self.Omega}")
        x = self.beta * self.omega
        if not x > 0:
            raise DomainError(f"beta*omega must be > 0, got {x}")
        if x < MIN_BETA_OMEGA:
            raise DomainError(f"beta*omega = {x} is below the supported minimum {MIN_BETA_OMEGA}")
        if x < 1e-3:
            warnings.warn(
                f"beta*omega = {x}: mean photon number {mean_photon_number(x):.3g} makes the dynamics stiff",
                stacklevel=2,
            )

    @classmethod
    def from_temperature(cls, temperature: float, **kw) -> "ReservoirParams":
        """Build from T/omega (0 means the vacuum)."""
        omega = kw.get("omega", 1.0)
        beta = math.inf if temperature == 0 else 1.0 / (temperature * omega)
        return cls(beta=beta, **kw)

    @property
    def beta_omega(self) -> float:
        return self.beta * self.omega

    @property
    def nbar(self) -> float:
        return mean_photon_number(self.beta_omega)

    @property
    def gamma(self) -> float:
        return self.G * self.gamma0


@dataclass(frozen=True, eq=False)
class Liouvillian:
    mat: np.ndarray
    params: ReservoirParams = field(repr=False)

    def __post_init__(self):
        self.mat.flags.writeable = False

    def apply(self, rho: DensityMatrix) -> np.ndarray:
        """L(rho) as a canonical-basis 4x4 matrix."""
        return (self.mat @ vec(rho.canonical)).reshape(4, 4)


def vec(m: np.ndarray) -> np.ndarray:
    return np.asarray(m, dtype=complex).reshape(16)


def unvec(v: np.ndarray) -> np.ndarray:
    return np.asarray(v).reshape(4, 4)


def _sandwich(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Superoperator of rho -> A rho B."""
    return np.kron(A, B.T)


def _lindblad_term(Lj: np.ndarray, Lk_dag: np.ndarray) -> np.ndarray:
    """Superoperator of rho -> 2 Lj rho Lk^+ - Lk^+ Lj rho - rho Lk^+ Lj."""
    prod = Lk_dag @ Lj
    return 2.0 * _sandwich(Lj, Lk_dag) - _sandwich(prod, _I4) - _sandwich(_I4, prod)


def hamiltonian(p: ReservoirParams) -> np.ndarray:
    sp, sm = SIGMA_PLUS, SIGMA_MINUS
    H = 0.5 * p.omega * (SIGMA_3[0] + SIGMA_3[1])
    H = H + p.Omega * (sp[0] @ sm[1] + sp[1] @ sm[0])
    return H.astype(complex)


def build_liouvillian(p: ReservoirParams) -> Liouvillian:
    H = hamiltonian(p)
    L = -1j * (_sandwich(H, _I4) - _sandwich(_I4, H))
    nbar = p.nbar
    rates = np.array([[p.gamma0, p.gamma], [p.gamma, p.gamma0]])
    for j in range(2):
        for k in range(2):
            down = rates[j, k] * (1.0 + nbar)
            up = rates[j, k] * nbar
            L = L + 0.5 * down * _lindblad_term(SIGMA_MINUS[j], SIGMA_PLUS[k])
            if up:
                L = L + 0.5 * up * _lindblad_term(SIGMA_PLUS[j], SIGMA_MINUS[k])
    return Liouvillian(L, p)


def _as_liouvillian(p: ReservoirParams | Liouvillian) -> Liouvillian:
    return p if isinstance(p, Liouvillian) else build_liouvillian(p)


# --- matrix-element equations in the collective basis ------------------------


def _ket_bra(ket: str, bra: str) -> np.ndarray:
    i = COLLECTIVE_LABELS.index(ket)
    j = COLLECTIVE_LABELS.index(bra)
    return np.outer(COLLECTIVE_U[:, i], COLLECTIVE_U[:, j].conj())


def generator_block(p: ReservoirParams | Liouvillian, elements: Sequence[tuple[str, str]]) -> np.ndarray:
    """Coefficient matrix K of d/dt rho_n = sum_m K[n, m] rho_m.

    ``elements`` lists collective-basis matrix elements, e.g.
    ``[("e", "s"), ("s", "g")]``.  Raises if the listed elements do not
    form a closed set under the generator.
    """
    L = _as_liouvillian(p)
    idx = [(COLLECTIVE_LABELS.index(k), COLLECTIVE_LABELS.index(b)) for k, b in elements]
    K = np.zeros((len(idx), len(idx)), dtype=complex)
    U = COLLECTIVE_U
    for m, (ket, bra) in enumerate(elements):
        out = U.conj().T @ unvec(L.mat @ vec(_ket_bra(ket, bra))) @ U
        for n, (i, j) in enumerate(idx):
            K[n, m] = out[i, j]
            out[i, j] = 0.0
        leak = np.max(np.abs(out))
        if leak > 1e-12:
            raise NumericalFailure(f"elements {list(elements)} do not form a closed block (leak {leak:.3g})")
    return K


def diagonal_block(p: ReservoirParams | Liouvillian) -> np.ndarray:
    """Real rate matrix for the populations (rho_ee, rho_ss, rho_aa, rho_gg)."""
    K = generator_block(p, [(c, c) for c in COLLECTIVE_LABELS])
    return K.real


def es_sg_block(p: ReservoirParams | Liouvillian) -> np.ndarray:
    return generator_block(p, [("e", "s"), ("s", "g")])


def ea_ag_block(p: ReservoirParams | Liouvillian) -> np.ndarray:
    return generator_block(p, [("e", "a"), ("a", "g")])


def coherence_rate(p: ReservoirParams | Liouvillian, ket: str, bra: str) -> complex:
    """Complex rate r with d/dt rho_kb = -r rho_kb for a self-contained element."""
    return complex(-generator_block(p, [(ket, bra)])[0, 0])


# --- time evolution ----------------------------------------------------------


def _finish(v: np.ndarray, what: str) -> DensityMatrix:
    m = unvec(v)
    rho = DensityMatrix(m)
    d = validate_density(rho)
    if not np.all(np.isfinite(m)) or max(d.trace_err, d.herm_err, -d.min_eig) > PROPAGATION_TOL:
        raise NumericalFailure(f"{what} left the density-matrix set: {d}")
    return DensityMatrix(0.5 * (m + m.conj().T))


def propagate(rho0: DensityMatrix, p: ReservoirParams | Liouvillian, t: float) -> DensityMatrix:
    """exp(L t) rho0, returned in the canonical basis."""
    if not (t >= 0 and math.isfinite(t)):
        raise DomainError(f"time must be finite and >= 0, got {t}")
    L = _as_liouvillian(p)
    v = expm(L.mat * t) @ vec(rho0.canonical)
    return _finish(v, "propagation")


def propagate_rk(
    rho0: DensityMatrix, p: ReservoirParams | Liouvillian, t: float, dt_max: float = 1e-3
) -> DensityMatrix:
    """Fixed-step classical Runge-Kutta integration of d rho/dt = L rho."""
    if not dt_max > 0:
        raise DomainError(f"dt_max must be > 0, got {dt_max}")
    if not (t >= 0 and math.isfinite(t)):
        raise DomainError(f"time must be finite and >= 0, got {t}")
    A = _as_liouvillian(p).mat
    v = vec(rho0.canonical).copy()
    n = math.ceil(t / dt_max)
    if n:
        h = t / n
        for _ in range(n):
            k1 = A @ v
            k2 = A @ (v + 0.5 * h * k1)
            k3 = A @ (v + 0.5 * h * k2)
            k4 = A @ (v + h * k3)
            v = v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return _finish(v, "Runge-Kutta integration")


def evolve_grid(rho0: DensityMatrix, p: ReservoirParams | Liouvillian, dt: float, steps: int):
    """States at t = 0, dt, ..., steps*dt, by repeated application of exp(L dt)."""
    L = _as_liouvillian(p)
    step = expm(L.mat * dt)
    v = vec(rho0.canonical)
    out = [_finish(v, "propagation")]
    for _ in range(steps):
        v = step @ v
        out.append(_finish(v, "propagation"))
    return out


# --- stationary states -------------------------------------------------------


def null_space(L: Liouvillian, dim: int, rtol: float = 1e-9) -> np.ndarray:
    """Orthonormal basis (16 x dim) of the kernel of L, checking its dimension."""
    _, s, vh = np.linalg.svd(L.mat)
    cut = rtol * max(1.0, s[0])
    found = int(np.sum(s <= cut))
    if found != dim:
        raise DegeneracyError(f"expected a {dim}-dimensional stationary space, found {found}")
    return vh[-dim:].conj().T


def _slowest_decay(L: Liouvillian) -> tuple[float, bool]:
    """Smallest decay rate among non-stationary modes, and whether any mode is undamped."""
    ev = np.linalg.eigvals(L.mat)
    moving = ev[np.abs(ev) > 1e-9]
    if moving.size == 0:
        return math.inf, False
    rates = -moving.real
    return float(rates.min()), bool(np.any(rates < 1e-12))


def steady_state(
    p: ReservoirParams | Liouvillian,
    rho0: DensityMatrix | None = None,
    *,
    cross_check: bool = True,
    max_time: float = 1e5,
) -> DensityMatrix:
    """Long-time limit of the dynamics started from ``rho0``.

    For G < 1 the stationary state is unique and ``rho0`` is ignored.  For
    G = 1 the singlet population of ``rho0`` is conserved and selects one
    state from a two-dimensional stationary family.

    With ``cross_check`` the null-space solution is compared with direct
    propagation to max(200, 40/gap)/gamma0 and a mismatch beyond 1e-8 raises.
    """
    L = _as_liouvillian(p)
    params = L.params
    degenerate = params.G == 1.0
    if degenerate and rho0 is None:
        raise DomainError("G = 1 needs an initial state to fix the conserved singlet fidelity")
    N = null_space(L, 2 if degenerate else 1)
    basis_mats = [unvec(N[:, i]) for i in range(N.shape[1])]
    A = [[np.trace(m) for m in basis_mats]]
    b = [1.0]
    if degenerate:
        A.append([SINGLET.conj() @ m @ SINGLET for m in basis_mats])
        b.append(fidelity_singlet(rho0))
    coef = np.linalg.solve(np.array(A), np.array(b, dtype=complex))
    m = sum(c * bm for c, bm in zip(coef, basis_mats))
    m = 0.5 * (m + m.conj().T)
    resid = np.max(np.abs(L.mat @ vec(m)))
    if resid > 1e-10:
        raise NumericalFailure(f"stationary residual {resid:.3g} exceeds 1e-10")
    rho = _finish(vec(m), "stationary solve")

    if cross_check:
        start = rho0 if rho0 is not None else DensityMatrix(np.eye(4) / 4)
        gap, undamped = _slowest_decay(L)
        t_final = max(STEADY_T / params.gamma0, 40.0 / gap)
        if undamped:
            warnings.warn("generator has undamped oscillating modes; propagation cross-check skipped", stacklevel=2)
        elif t_final > max_time / params.gamma0:
            warnings.warn(
                f"slowest decay rate {gap:.3g} needs t = {t_final:.3g}; propagation cross-check skipped",
                stacklevel=2,
            )
        else:
            late = propagate(start, L, t_final)
            diff = np.max(np.abs(late.mat - rho.mat))
            if diff > 1e-8:
                raise NumericalFailure(
                    f"null-space and long-time propagation steady states differ by {diff:.3g}"
                )
    return rho

