"""Run configurations and the tables behind the command-line commands."""
from __future__ import annotations

import math
import shlex
from dataclasses import dataclass, replace
from typing import Callable, Optional

from . import asymptotics as asym
from .entanglement import concurrence
from .errors import DomainError, SpecSyntaxError
from .lindblad import ReservoirParams, evolve_grid, steady_state
from .specs import format_state_spec, grid
from .table import SweepTable, format_number
from .states import (
    Basis,
    DensityMatrix,
    MaxEnt,
    Product,
    StateSpec,
    XClass,
    change_basis,
    fidelity_singlet,
    gibbs_state,
    make_state,
    validate_density,
)

FIGURES = ("fig1", "fig2", "fig3", "fig4", "fig5")
SWEEP_PARAMS = ("temp", "G", "F", "alpha", "z", "a", "theta")
FIG5_Z = (0.25, 0.5, 0.75)


@dataclass(frozen=True)
class RunConfig:
    state: Optional[StateSpec] = None
    G: float = 1.0
    beta_omega: float = 1.0
    omega: float = 1.0
    gamma0: float = 1.0
    Omega: float = 0.0
    t_max: float = 10.0
    dt_out: float = 0.1
    out: Optional[str] = None

    @property
    def temperature(self) -> float:
        return 0.0 if math.isinf(self.beta_omega) else 1.0 / self.beta_omega

    def params(self) -> ReservoirParams:
        return ReservoirParams(
            omega=self.omega, gamma0=self.gamma0, G=self.G, Omega=self.Omega,
            beta=self.beta_omega / self.omega,
        )

    def to_flags(self) -> str:
        """Canonical flag string; ``parse_flags(cfg.to_flags()) == cfg``."""
        # --flag=value keeps negative numbers from being read as options
        parts = []
        if self.state is not None:
            parts.append(f"--state={format_state_spec(self.state)}")
        for flag, v in (
            ("--g", self.G), ("--beta-omega", self.beta_omega), ("--omega", self.omega),
            ("--gamma0", self.gamma0), ("--cap-omega", self.Omega),
            ("--t-max", self.t_max), ("--dt-out", self.dt_out),
        ):
            parts.append(f"{flag}={v!r}")
        if self.out is not None:
            parts.append(f"--out={self.out}")
        return shlex.join(parts)


def parse_flags(text: str) -> RunConfig:
    from .cli import build_parser, config_from_args

    args = build_parser().parse_args(["evolve", *shlex.split(text)])
    return config_from_args(args)


def _tc(F: float) -> Optional[float]:
    if F >= 0.5 - asym.BOUNDARY_TOL:
        return None
    if F <= 1e-15:
        return 0.0
    return asym.critical_temperature(F)


def _p(F: float, ctx) -> Optional[float]:
    if F < asym.threshold_fidelity(ctx) - 1e-10:
        return None
    return asym.mixing_probability(min(max(F, 0.0), 1.0), ctx)


# --- evolve ------------------------------------------------------------------

EVOLVE_COLUMNS = [
    "t", "rho_ee", "rho_ss", "rho_aa", "rho_gg",
    *[f"{part}_rho_{k}{b}" for k, b in ("es", "sg", "ea", "ag", "eg", "sa") for part in ("re", "im")],
    "concurrence", "fidelity", "purity", "trace_err",
]


def evolve_table(cfg: RunConfig):
    if cfg.state is None:
        raise DomainError("evolve needs --state")
    if not (cfg.dt_out > 0 and cfg.t_max >= 0):
        raise DomainError("need dt_out > 0 and t_max >= 0")
    steps = int(math.floor(cfg.t_max / cfg.dt_out + 1e-9))
    rho0 = make_state(cfg.state)
    table = SweepTable(list(EVOLVE_COLUMNS))
    idx = {c: i for i, c in enumerate("esag")}
    for n, rho in enumerate(evolve_grid(rho0, cfg.params(), cfg.dt_out, steps)):
        c = change_basis(rho, Basis.COLLECTIVE).mat
        row = [float(f"{n * cfg.dt_out:.12g}")]
        row += [c[i, i].real for i in range(4)]
        for k, b in ("es", "sg", "ea", "ag", "eg", "sa"):
            z = c[idx[k], idx[b]]
            row += [z.real, z.imag]
        row += [concurrence(rho), fidelity_singlet(rho), rho.purity(), validate_density(rho).trace_err]
        table.append(row)
    return table


# --- steady ------------------------------------------------------------------


def _shown(x: float) -> float:
    # below the printed precision; avoids "-0.0000000000"
    return 0.0 if abs(x) < 5e-11 else x


@dataclass
class SteadyReport:
    state: DensityMatrix
    fidelity: float
    concurrence: float
    threshold: float
    mixing: Optional[float]
    critical_temperature: Optional[float]

    def text(self) -> str:
        lines = ["steady state, canonical basis |11>,|10>,|01>,|00>:"]
        for row in self.state.canonical:
            lines.append("  " + "  ".join(f"{_shown(v.real):+.10f}{_shown(v.imag):+.10f}j" for v in row))
        lines.append(f"fidelity F = {format_number(self.fidelity)}")
        lines.append(f"concurrence = {format_number(self.concurrence)}")
        lines.append(f"threshold fidelity F_beta = {format_number(self.threshold)}")
        if self.mixing is None:
            lines.append("mixing probability p: below threshold (no thermal Werner form)")
        else:
            lines.append(f"mixing probability p = {format_number(self.mixing)}")
        if self.critical_temperature is not None:
            lines.append(f"critical temperature T_c/omega = {format_number(self.critical_temperature)}")
        return "\n".join(lines) + "\n"

    def table(self):
        cols = ["F", "F_beta", "p", "concurrence", "T_c"]
        vals = [self.fidelity, self.threshold, self.mixing, self.concurrence, self.critical_temperature]
        m = self.state.canonical
        for i in range(4):
            for j in range(4):
                cols += [f"re_rho_{i + 1}{j + 1}", f"im_rho_{i + 1}{j + 1}"]
                vals += [m[i, j].real, m[i, j].imag]
        t = SweepTable(cols)
        t.append(vals)
        return t


def steady_report(cfg: RunConfig) -> SteadyReport:
    if cfg.state is None:
        raise DomainError("steady needs --state")
    rho = steady_state(cfg.params(), make_state(cfg.state))
    F = fidelity_singlet(rho)
    ctx = asym.ThermalContext(cfg.beta_omega)
    return SteadyReport(rho, F, concurrence(rho), asym.threshold_fidelity(ctx), _p(F, ctx), _tc(F))


# --- figures -----------------------------------------------------------------


def default_figure_grid(fig: str) -> tuple[float, float, float]:
    return (0.1, 10.0, 0.1) if fig == "fig3" else (0.01, 5.0, 0.01)


def figure_table(fig: str, values: Optional[list[float]] = None):
    if fig not in FIGURES:
        raise DomainError(f"unknown figure {fig!r}; choose from {', '.join(FIGURES)}")
    if values is None:
        values = grid(*default_figure_grid(fig))
    if fig == "fig3":
        table = SweepTable(["T0", "T_c"])
        for t0 in values:
            table.append([t0, asym.gibbs_critical_temperature(t0)])
        return table
    if fig == "fig5":
        table = SweepTable(["T", *[f"C_as_z{z:g}" for z in FIG5_Z]])
        for t in values:
            ctx = asym.ThermalContext.from_temperature(t)
            table.append([t, *[asym.xclass_asymptotic_concurrence(z, ctx) for z in FIG5_Z]])
        return table
    curve: Callable[[asym.ThermalContext], float]
    if fig == "fig1":
        curve = lambda ctx: asym.product_asymptotic_concurrence(0.0, ctx)  # noqa: E731
    elif fig == "fig2":
        curve = lambda ctx: asym.product_asymptotic_concurrence(0.25, ctx)  # noqa: E731
    else:
        F4 = asym.gibbs_fidelity(1.0 / 4.0)
        curve = lambda ctx: asym.asymptotic_concurrence(F4, ctx)  # noqa: E731
    table = SweepTable(["T", "C_as"])
    for t in values:
        table.append([t, curve(asym.ThermalContext.from_temperature(t))])
    return table


# --- sweeps ------------------------------------------------------------------

SWEEP_COLUMNS = ["F", "F_beta", "F_0", "p", "C_as", "T_c"]


def _sweep_point(param: str, value: float, cfg: RunConfig) -> list[Optional[float]]:
    state = cfg.state
    if param == "temp":
        if value < 0:
            raise DomainError("temperature must be >= 0")
        cfg = replace(cfg, beta_omega=math.inf if value == 0 else 1.0 / value)
    elif param == "G":
        cfg = replace(cfg, G=value)
    elif param == "alpha":
        if not 0.0 <= value <= 1.0:
            raise DomainError(f"alpha must lie in [0, 1], got {value}")
        state = Product(0.0, 0.0, math.acos(value), 0.0)
    elif param == "z":
        state = XClass(state.x if isinstance(state, XClass) else 0.5, value)
    elif param == "a":
        th = state.theta if isinstance(state, MaxEnt) else math.pi
        state = MaxEnt(value, th, 0.0) if th >= 0 else MaxEnt(value, 0.0, -th)
    elif param == "theta":
        a = state.a if isinstance(state, MaxEnt) else 0.0
        state = MaxEnt(a, value, 0.0)

    ctx = asym.ThermalContext(cfg.beta_omega)
    if param == "F":
        if not 0.0 <= value <= 1.0:
            raise DomainError(f"F must lie in [0, 1], got {value}")
        rho = asym.asymptotic_state(value, ctx) if cfg.G == 1.0 else gibbs_state(cfg.beta_omega)
    else:
        rho = steady_state(cfg.params(), make_state(state))
    F = fidelity_singlet(rho)
    return [
        value, F, asym.threshold_fidelity(ctx), asym.entanglement_threshold(ctx),
        _p(F, ctx), concurrence(rho), _tc(F),
    ]


_COMPATIBLE = {
    "F": (type(None),),
    "alpha": (type(None), Product),
    "z": (type(None), XClass),
    "a": (type(None), MaxEnt),
    "theta": (type(None), MaxEnt),
}


def sweep_table(param: str, values: list[float], cfg: RunConfig):
    """One row per grid point; each row is computed independently of the others."""
    if param not in SWEEP_PARAMS:
        raise SpecSyntaxError(f"unknown sweep parameter {param!r}; choose from {', '.join(SWEEP_PARAMS)}", 0)
    allowed = _COMPATIBLE.get(param)
    if allowed is None and cfg.state is None:
        raise DomainError(f"sweeping {param} needs --state")
    if allowed is not None and not isinstance(cfg.state, allowed):
        raise DomainError(f"sweeping {param} is incompatible with state {format_state_spec(cfg.state)}")
    table = SweepTable([param, *SWEEP_COLUMNS])
    for v in sorted(values):
        table.append(_sweep_point(param, v, cfg))
    return table

