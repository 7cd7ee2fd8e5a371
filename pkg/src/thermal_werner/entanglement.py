"""Wootters concurrence of two-qubit states."""
import numpy as np

from .errors import StructureError, ValidationError
from .states import DensityMatrix

# sigma_y (x) sigma_y; real, and unchanged by the (|1>, |0>) ordering.
YY = np.fliplr(np.diag([-1.0, 1.0, 1.0, -1.0]))

CLAMP_TOL = 1e-12
RANK_TOL = 1e-14
X_TOL = 1e-10
_X_MASK = np.array(
    [
        [1, 0, 0, 0],
        [0, 1, 1, 0],
        [0, 1, 1, 0],
        [0, 0, 0, 1],
    ],
    dtype=bool,
)


def _clamp(c: float) -> float:
    if c < -CLAMP_TOL:
        raise ValidationError(f"concurrence {c:.3g} is negative beyond round-off")
    return float(min(1.0, max(0.0, c)))


def spin_flip(rho: DensityMatrix) -> np.ndarray:
    m = rho.canonical
    return YY @ m.conj() @ YY


def wootters_roots(rho: DensityMatrix) -> np.ndarray:
    """Square roots of the eigenvalues of rho * spin_flip(rho), descending.

    With rho = B B^+ (B = V sqrt(D) from the eigendecomposition) these are the
    singular values of B^T YY B, whose Gram matrix B^+ rho~ B is Hermitian and
    shares its nonzero spectrum with rho rho~.  Eigenvalues of rho below
    RANK_TOL are treated as exact zeros so that round-off in a rank-deficient
    rho does not reappear as its square root.
    """
    m = rho.canonical
    m = 0.5 * (m + m.conj().T)
    d, V = np.linalg.eigh(m)
    if d[0] < -1e-10:
        raise ValidationError(f"matrix has negative eigenvalue {d[0]:.3g}")
    keep = d > RANK_TOL
    B = V[:, keep] * np.sqrt(d[keep])
    s = np.linalg.svd(B.T @ YY @ B, compute_uv=False)
    out = np.zeros(4)
    out[: s.size] = s
    return out


def concurrence(rho: DensityMatrix) -> float:
    """max(0, l1 - l2 - l3 - l4) over the Wootters roots."""
    rho.require_valid(herm_tol=1e-8, trace_tol=1e-8, eig_tol=1e-10)
    r = wootters_roots(rho)
    return _clamp(max(0.0, r[0] - r[1] - r[2] - r[3]))


def is_x_state(rho: DensityMatrix, tol: float = X_TOL) -> bool:
    return bool(np.max(np.abs(rho.canonical[~_X_MASK])) <= tol)


def concurrence_x(rho: DensityMatrix) -> float:
    """Closed form 2(|rho_23| - sqrt(rho_11 rho_44)) for block-X states."""
    if not is_x_state(rho):
        raise StructureError("state has entries outside the 11/22/23/32/33/44 pattern")
    m = rho.canonical
    p11 = max(m[0, 0].real, 0.0)
    p44 = max(m[3, 3].real, 0.0)
    return _clamp(max(0.0, 2.0 * (abs(m[1, 2]) - np.sqrt(p11 * p44))))
