"""Column-labelled numeric tables and their deterministic CSV form."""
from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence


def format_number(v: Optional[float]) -> str:
    """Shortest representation within 12 significant digits; ``None`` -> empty."""
    if v is None:
        return ""
    s = f"{v:.12g}"
    return "0" if s == "-0" else s


@dataclass
class SweepTable:
    columns: list[str]
    rows: list[tuple] = field(default_factory=list)

    def append(self, row: Sequence[Optional[float]]) -> None:
        if len(row) != len(self.columns):
            raise ValueError(f"row has {len(row)} fields, table has {len(self.columns)} columns")
        for name, v in zip(self.columns, row):
            if v is not None and not math.isfinite(v):
                raise ValueError(f"non-finite value {v} in column {name!r}")
        self.rows.append(tuple(None if v is None else float(v) for v in row))

    def column(self, name: str) -> list[Optional[float]]:
        i = self.columns.index(name)
        return [r[i] for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(self.columns) + "\n")
        for r in self.rows:
            buf.write(",".join(format_number(v) for v in r) + "\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "SweepTable":
        lines = text.splitlines()
        table = cls(lines[0].split(","))
        for line in lines[1:]:
            table.append([float(x) if x else None for x in line.split(",")])
        return table
