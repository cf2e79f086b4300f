"""Temperature sweeps: grid parsing, parallel row evaluation, CSV/JSON text.

Output bytes are part of the regression contract: 17 significant digits
(lossless binary64 round-trip), '.' radix, ',' separator, LF endings, rows in
ascending theta. Rows may be computed on a thread pool (BBSHIFT_THREADS caps
it) but are always assembled in grid order, so identical inputs give
byte-identical files at any concurrency level.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .energies import EnergyBreakdown, energy_breakdown
from .model import ValidityError
from .quadrature import DEFAULT_BUDGET

__all__ = ["GridSpec", "SweepTable", "run_sweep", "CSV_COLUMNS"]

CSV_COLUMNS = (
    "theta",
    "u1",
    "u2",
    "e_osc",
    "delta_e",
    "delta_e_asym",
    "delta_f",
    "thermo_residual",
)

# how delta_e is referenced; recorded in sweep metadata so a table is
# self-describing about the subtraction convention used at intermediate theta
DELTA_E_REFERENCE = "E - 3*nbar(1/theta), free-oscillator thermal energy subtracted"


@dataclass(frozen=True)
class GridSpec:
    """Temperature grid 'min:max:count[:log|lin]'; log spacing by default."""

    lo: float
    hi: float
    count: int
    spacing: str = "log"

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("grid endpoints must be finite")
        if self.spacing not in ("log", "lin"):
            raise ValueError(f"spacing must be 'log' or 'lin', got {self.spacing!r}")
        if self.count < 1:
            raise ValueError(f"grid count must be >= 1, got {self.count}")
        if self.count == 1:
            if self.lo != self.hi:
                raise ValueError("a 1-point grid needs min == max")
        elif not self.lo < self.hi:
            raise ValueError(f"grid needs min < max, got [{self.lo}, {self.hi}]")
        if self.lo <= 0.0:
            raise ValueError("grid temperatures must be positive")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise ValueError(
                f"grid spec {text!r} is not of the form min:max:count[:log|lin]"
            )
        try:
            lo, hi = float(parts[0]), float(parts[1])
            count = int(parts[2])
        except ValueError:
            raise ValueError(f"non-numeric field in grid spec {text!r}") from None
        return cls(lo, hi, count, parts[3] if len(parts) == 4 else "log")

    def describe(self) -> str:
        return f"{self.lo:g}:{self.hi:g}:{self.count}:{self.spacing}"

    def points(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.lo])
        if self.spacing == "log":
            return np.geomspace(self.lo, self.hi, self.count)
        return np.linspace(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class SweepTable:
    """Header metadata plus EnergyBreakdown rows in ascending theta."""

    g: float
    nu: float
    grid: str
    version: str
    rows: tuple

    def __post_init__(self):
        thetas = [r.theta for r in self.rows]
        if any(b <= a for a, b in zip(thetas, thetas[1:])):
            raise ValueError("rows must be strictly ascending in theta")
        spec = GridSpec.parse(self.grid)
        if spec.count != len(self.rows):
            raise ValueError(
                f"grid {self.grid!r} promises {spec.count} rows, have {len(self.rows)}"
            )

    def to_csv(self) -> str:
        lines = [",".join(CSV_COLUMNS)]
        for r in self.rows:
            lines.append(",".join(f"{getattr(r, c):.17g}" for c in CSV_COLUMNS))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "g": self.g,
            "nu": self.nu,
            "grid": self.grid,
            "version": self.version,
            "delta_e_reference": DELTA_E_REFERENCE,
            "columns": list(CSV_COLUMNS),
            "rows": [{c: getattr(r, c) for c in CSV_COLUMNS} for r in self.rows],
        }
        return json.dumps(doc, indent=2) + "\n"

    @classmethod
    def from_csv(cls, text: str, g: float = float("nan"), nu: float = 0.0):
        """Parse to_csv output back into rows (metadata is not in the CSV)."""
        lines = [ln for ln in text.split("\n") if ln]
        if lines[0] != ",".join(CSV_COLUMNS):
            raise ValueError("unrecognized CSV header")
        rows = []
        for ln in lines[1:]:
            vals = dict(zip(CSV_COLUMNS, (float(x) for x in ln.split(","))))
            rows.append(EnergyBreakdown(**vals, u0_per_vtilde=0.0))
        grid = f"{rows[0].theta:g}:{rows[-1].theta:g}:{len(rows)}:log"
        return cls(g=g, nu=nu, grid=grid, version="", rows=tuple(rows))


def _thread_count() -> int:
    env = os.environ.get("BBSHIFT_THREADS", "").strip()
    if env:
        n = int(env)
        if n < 1:
            raise ValidityError(f"BBSHIFT_THREADS must be >= 1, got {n}")
        return n
    return min(8, os.cpu_count() or 1)


def run_sweep(
    g: float,
    grid: GridSpec,
    nu: float = 0.0,
    rel_tol: float = 1e-8,
    *,
    budget: int = DEFAULT_BUDGET,
    version: str = "",
    threads: int | None = None,
) -> SweepTable:
    """Evaluate EnergyBreakdown on the grid, rows ordered by ascending theta.

    nu is carried in the table metadata only: every row quantity here is a
    per-oscillator energy, independent of the medium density. Raises
    QuadratureBudgetError (from the first failing row, deterministically)
    rather than returning a partial table.
    """
    if not version:
        from . import __version__ as version
    thetas = grid.points()
    workers = threads if threads is not None else _thread_count()

    def row(th: float) -> EnergyBreakdown:
        return energy_breakdown(float(th), g, rel_tol, budget=budget)

    if workers == 1 or len(thetas) == 1:
        rows = [row(th) for th in thetas]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, thetas))
    return SweepTable(g=g, nu=nu, grid=grid.describe(), version=version, rows=tuple(rows))
