"""Text grammar for initial states and numeric ranges.

State grammar::

    e | g | s | a
    product:thetaA,phiA,thetaB,phiB
    gibbs:T0
    maxent:a,th1,th2
    xclass:x,z
    eta:eta
    file:PATH

Angles are radians; whitespace around tokens is ignored.
"""
from __future__ import annotations

import math
import re

from .errors import SpecSyntaxError
from .states import (
    COLLECTIVE_LABELS,
    Collective,
    EtaState,
    Gibbs,
    MaxEnt,
    Product,
    Raw,
    StateSpec,
    XClass,
)

_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")

_FAMILIES = {
    "product": (Product, ("thetaA", "phiA", "thetaB", "phiB")),
    "gibbs": (Gibbs, ("T0",)),
    "maxent": (MaxEnt, ("a", "th1", "th2")),
    "xclass": (XClass, ("x", "z")),
    "eta": (EtaState, ("eta",)),
}


def _leading_ws(s: str) -> int:
    return len(s) - len(s.lstrip())


def parse_number(token: str, name: str, position: int = 0) -> float:
    tok = token.strip()
    if not _NUMBER.fullmatch(tok):
        raise SpecSyntaxError(f"expected a decimal number for {name}, got {tok!r}", position + _leading_ws(token))
    return float(tok)


def parse_state_spec(text: str) -> StateSpec:
    head, sep, rest = text.partition(":")
    name = head.strip()
    name_pos = _leading_ws(head)
    if not name:
        raise SpecSyntaxError("missing state name", name_pos)
    if not sep:
        if name in COLLECTIVE_LABELS:
            return Collective(name)
        if name in _FAMILIES or name == "file":
            raise SpecSyntaxError(f"state {name!r} needs ':' followed by parameters", len(text))
        raise SpecSyntaxError(f"unknown state {name!r}", name_pos)
    if name == "file":
        path = rest.strip()
        if not path:
            raise SpecSyntaxError("file: needs a path", len(head) + 1)
        return Raw(path)
    if name not in _FAMILIES:
        raise SpecSyntaxError(f"unknown state {name!r}", name_pos)

    cls, names = _FAMILIES[name]
    fields = rest.split(",")
    offset = len(head) + 1
    if len(fields) != len(names):
        raise SpecSyntaxError(
            f"{name} takes {len(names)} parameters ({','.join(names)}), got {len(fields)}", offset
        )
    values = []
    for field, pname in zip(fields, names):
        values.append(parse_number(field, pname, offset))
        offset += len(field) + 1
    return cls(*values)


def format_state_spec(spec: StateSpec) -> str:
    """Inverse of :func:`parse_state_spec`; floats use their round-trip repr."""
    match spec:
        case Collective(label):
            return label
        case Product(ta, pa, tb, pb):
            vals = (ta, pa, tb, pb)
            fam = "product"
        case Gibbs(t0):
            vals, fam = (t0,), "gibbs"
        case MaxEnt(a, t1, t2):
            vals, fam = (a, t1, t2), "maxent"
        case XClass(x, z):
            vals, fam = (x, z), "xclass"
        case EtaState(eta):
            vals, fam = (eta,), "eta"
        case Raw(path):
            return f"file:{path}"
        case _:
            raise TypeError(f"not a state spec: {spec!r}")
    return fam + ":" + ",".join(repr(float(v)) for v in vals)


def parse_range(text: str) -> list[float]:
    """``start:stop:step`` -> grid including ``stop`` when it lies on the grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise SpecSyntaxError(f"range must look like start:stop:step, got {text!r}", 0)
    offset = 0
    nums = []
    for part, name in zip(parts, ("start", "stop", "step")):
        nums.append(parse_number(part, name, offset))
        offset += len(part) + 1
    start, stop, step = nums
    if not step > 0:
        raise SpecSyntaxError(f"range step must be > 0, got {step}", len(parts[0]) + len(parts[1]) + 2)
    if stop < start:
        raise SpecSyntaxError(f"range stop {stop} is below start {start}", len(parts[0]) + 1)
    return grid(start, stop, step)


def grid(start: float, stop: float, step: float) -> list[float]:
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    # 12 significant digits, matching the CSV output precision
    return [float(f"{start + i * step:.12g}") for i in range(n)]
