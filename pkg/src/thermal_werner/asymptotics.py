"""Closed-form stationary states and asymptotic entanglement for G = 1.

Everything is written in terms of y = exp(-beta*omega) so that the zero
temperature limit (y = 0) and infinite temperature (y = 1) are ordinary
arguments.  The identity 3/(1 + 2 cosh x) = 3y/u with u = 1 + y + y^2 is
used throughout in place of cosh.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, NotRepresentableError
from .states import DensityMatrix, SINGLET, gibbs_state

BOUNDARY_TOL = 1e-12
_SINGLET_PROJ = np.outer(SINGLET, SINGLET.conj())


@dataclass(frozen=True)
class ThermalContext:
    """Reservoir temperature expressed through beta*omega in [0, inf]."""

    beta_omega: float

    def __post_init__(self):
        if not self.beta_omega >= 0:
            raise DomainError(f"beta*omega must be >= 0, got {self.beta_omega}")

    @classmethod
    def from_temperature(cls, t: float) -> "ThermalContext":
        """T/omega; 0 is the vacuum, inf the maximally noisy reservoir."""
        if not t >= 0:
            raise DomainError(f"temperature must be >= 0, got {t}")
        if t == 0:
            return cls(math.inf)
        return cls(0.0 if math.isinf(t) else 1.0 / t)

    @property
    def y(self) -> float:
        return math.exp(-self.beta_omega)

    @property
    def u(self) -> float:
        y = self.y
        return 1.0 + y + y * y

    @property
    def temperature(self) -> float:
        if self.beta_omega == 0:
            return math.inf
        return 1.0 / self.beta_omega




def _ctx(ctx) -> ThermalContext:
    return ctx if isinstance(ctx, ThermalContext) else ThermalContext(float(ctx))


def _check_fidelity(F: float) -> float:
    """Reject F outside [0, 1]; round-off within BOUNDARY_TOL is clamped."""
    if not -BOUNDARY_TOL <= F <= 1.0 + BOUNDARY_TOL:
        raise DomainError(f"fidelity must lie in [0, 1], got {F}")
    return min(1.0, max(0.0, F))


def asymptotic_state(F: float, ctx) -> DensityMatrix:
    """Stationary state reached from any initial state with singlet fidelity F."""
    F = _check_fidelity(F)
    c = _ctx(ctx)
    y, u = c.y, c.u
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = y * y * (1.0 - F) / u
    m[1, 1] = m[2, 2] = y * (1.0 - F) / (2.0 * u) + F / 2.0
    m[1, 2] = m[2, 1] = y * (1.0 - F) / (2.0 * u) - F / 2.0
    m[3, 3] = (1.0 - F) / u
    return DensityMatrix(m)


def threshold_fidelity(ctx) -> float:
    """Fidelity whose asymptotic state is the Gibbs state: y/(1+y)^2."""
    y = _ctx(ctx).y
    return y / (1.0 + y) ** 2


@dataclass(frozen=True)
class WernerDecomposition:
    """(1 - p) * Gibbs(beta) + p * |a><a|."""

    p: float
    ctx: ThermalContext

    def state(self) -> DensityMatrix:
        gibbs = gibbs_state(self.ctx.beta_omega).mat
        return DensityMatrix((1.0 - self.p) * gibbs + self.p * _SINGLET_PROJ)


def mixing_probability(F: float, ctx) -> float:
    F = _check_fidelity(F)
    c = _ctx(ctx)
    y = c.y
    Fb = threshold_fidelity(c)
    if F < Fb - BOUNDARY_TOL:
        raise NotRepresentableError(
            f"F = {F} is below the threshold fidelity {Fb}; no thermal Werner form"
        )
    return max(0.0, ((1.0 + y) ** 2 * F - y) / c.u)


def werner_decomposition(F: float, ctx) -> WernerDecomposition:
    c = _ctx(ctx)
    return WernerDecomposition(mixing_probability(F, c), c)


def separability_threshold(ctx) -> float:
    """Mixing probability p0 = 2y/(1 + 4y + y^2) at which W_beta becomes separable."""
    y = _ctx(ctx).y
    return 2.0 * y / (1.0 + 4.0 * y + y * y)


def werner_concurrence(p: float, ctx) -> float:
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    y = _ctx(ctx).y
    return max(0.0, p - 2.0 * y / (1.0 + y) ** 2 * (1.0 - p))


def _raw_asymptotic_concurrence(F: float, c: ThermalContext) -> float:
    return F - 3.0 * c.y * (1.0 - F) / c.u


def asymptotic_concurrence(F: float, ctx) -> float:
    """max(0, F - 3(1-F)/(1 + 2 cosh(beta*omega)))."""
    F = _check_fidelity(F)
    return max(0.0, _raw_asymptotic_concurrence(F, _ctx(ctx)))


def entanglement_threshold(ctx) -> float:
    """F0 = 3/(4 + 2 cosh(beta*omega)); asymptotic states are entangled above it."""
    y = _ctx(ctx).y
    return 3.0 * y / (1.0 + 4.0 * y + y * y)


def critical_temperature(F: float) -> float:
    """T_c/omega above which the asymptotic state for fidelity F is separable."""
    if not 0.0 < F < 0.5:
        raise DomainError(f"critical temperature is finite only for 0 < F < 1/2, got {F}")
    arg = (math.sqrt(3.0) * math.sqrt(3.0 - 8.0 * F + 4.0 * F * F) + 3.0 - 4.0 * F) / (2.0 * F)
    return 1.0 / math.log(arg)


# --- pure product initial states ---------------------------------------------


def product_fidelity(alpha: float) -> float:
    """(1 - alpha^2)/2 for a product state with factor overlap alpha."""
    return 0.5 * (1.0 - alpha * alpha)


def product_asymptotic_concurrence(alpha: float, ctx) -> float:
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    c = _ctx(ctx)
    y = c.y
    a2 = alpha * alpha
    # ((1-a2) cosh x - 1 - 2 a2)/(1 + 2 cosh x), multiplied through by 2y
    return max(0.0, ((1.0 - a2) * (1.0 + y * y) - 2.0 * y * (1.0 + 2.0 * a2)) / (2.0 * c.u))


def product_critical_temperature(alpha: float) -> float:
    """Returns inf for alpha = 0 (entangled at every finite temperature)."""
    if not 0.0 <= alpha < 1.0:
        raise DomainError(f"alpha must lie in [0, 1), got {alpha}")
    if alpha == 0.0:
        return math.inf
    a2 = alpha * alpha
    arg = (math.sqrt(3.0) * math.sqrt(2.0 * a2 + a2 * a2) + 1.0 + 2.0 * a2) / (1.0 - a2)
    return 1.0 / math.log(arg)


# --- Gibbs initial states ----------------------------------------------------


def gibbs_fidelity(beta0_omega: float) -> float:
    return threshold_fidelity(ThermalContext(beta0_omega))


def gibbs_critical_temperature(t0: float) -> float:
    """Critical reservoir temperature for an initial Gibbs state at T0/omega."""
    if not t0 > 0:
        raise DomainError(f"T0 must be > 0, got {t0}")
    F = gibbs_fidelity(1.0 / t0)
    # exp(-1/T0) underflows for tiny T0; T_c -> 0 in that limit
    return 0.0 if F == 0.0 else critical_temperature(F)


# --- maximally entangled initial states --------------------------------------


def maxent_fidelity(a: float, theta: float) -> float:
    return 0.5 * (1.0 - a * a) * (1.0 - math.cos(theta))


def in_region_E(a: float, theta: float) -> bool:
    """Whether (a, theta) lies in the closed set where the fidelity is >= 1/2."""
    if not 0.0 <= a <= 1.0 / math.sqrt(2.0) + BOUNDARY_TOL:
        return False
    a2 = min(a * a, 0.5)
    edge = math.acos(max(-1.0, a2 / (a2 - 1.0)))
    return edge - BOUNDARY_TOL <= theta <= 2.0 * math.pi - edge + BOUNDARY_TOL


def maxent_asymptotic_concurrence(a: float, theta: float, ctx) -> float:
    """Asymptotic concurrence of a maximally entangled projector.

    Inside the region E the closed form is used as is; outside it the value
    falls back to the clamped fidelity formula.
    """
    c = _ctx(ctx)
    if not in_region_E(a, theta):
        return asymptotic_concurrence(maxent_fidelity(a, theta), c)
    y, u = c.y, c.u
    b2 = 1.0 - a * a
    s2 = math.sin(theta / 2.0) ** 2
    # numerator and denominator of the cosh form multiplied by 2y
    num = 2.0 * b2 * (s2 * (1.0 + y * y) - 2.0 * y * math.cos(theta)) - 2.0 * y * (1.0 + 2.0 * a * a)
    return num / (2.0 * u)


def maxent_concurrence_limits(a: float, theta: float) -> tuple[float, float]:
    """(C_max at T = 0, C_min as T -> inf) for (a, theta) in E."""
    b2 = 1.0 - a * a
    return b2 * math.sin(theta / 2.0) ** 2, -(a * a + b2 * math.cos(theta))


def gibbs_return_temperature(a: float, theta: float) -> Optional[float]:
    """Reservoir temperature at which the projector relaxes exactly to the Gibbs state.

    Returns ``math.inf`` on the curve where the fidelity equals 1/4 and
    ``None`` where the fidelity exceeds 1/4 (no such temperature).
    """
    F = maxent_fidelity(a, theta)
    if F > 0.25 + BOUNDARY_TOL:
        return None
    if F >= 0.25 - BOUNDARY_TOL:
        return math.inf
    if F == 0.0:
        return 0.0
    b2 = 1.0 - a * a
    ct = math.cos(theta)
    arg = (a * a + b2 * ct + math.sqrt(2.0 * a * a - 1.0 + 2.0 * b2 * ct)) / (b2 * (1.0 - ct))
    return 1.0 / math.log(arg)


# --- partially entangled X-class states --------------------------------------


def xclass_asymptotic_concurrence(z: float, ctx) -> float:
    """z + (1 - z)(cosh x - 1)/(1 + 2 cosh x)."""
    if not 0.0 < z < 1.0:
        raise DomainError(f"z must lie in (0, 1), got {z}")
    c = _ctx(ctx)
    y = c.y
    # (cosh x - 1)/(1 + 2 cosh x) = (1 - y)^2/(2u)
    return z + (1.0 - z) * (1.0 - y) ** 2 / (2.0 * c.u)
