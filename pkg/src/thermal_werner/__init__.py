"""Two two-level atoms in a common thermal photon reservoir.

Lindblad dynamics, stationary states, Wootters concurrence and the closed-form
asymptotic (thermal Werner) states reached when the atoms are strongly
correlated.
"""
from .asymptotics import (
    ThermalContext,
    asymptotic_concurrence,
    asymptotic_state,
    critical_temperature,
    mixing_probability,
    threshold_fidelity,
)
from .entanglement import concurrence, concurrence_x
from .lindblad import (
    Liouvillian,
    ReservoirParams,
    build_liouvillian,
    diagonal_block,
    mean_photon_number,
    propagate,
    propagate_rk,
    steady_state,
)
from .states import (
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
    gibbs_state,
    make_state,
    validate_density,
)

__version__ = "0.1.0"
