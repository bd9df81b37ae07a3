"""Grid sampling and file output: CSV, legacy VTK, JSON reports.

Point ordering everywhere is x fastest, then y, then z::

    index(i, j, k) = i + nx * (j + ny * k)
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from .errors import BadParameter, DomainError, FieldIOError
from .families import Solution
from .verify import VerificationReport

CSV_HEADER = ("x", "y", "z", "p", "u", "v", "p_z")
REPORT_FORMAT = "rossby-exact-report/1"


def _interval(name, r):
    try:
        lo, hi = (float(v) for v in r)
    except (TypeError, ValueError):
        raise BadParameter(f"{name}-range must be a pair of numbers, got {r!r}") from None
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise BadParameter(f"{name}-range must be finite, got {r!r}")
    if hi < lo:
        raise BadParameter(f"{name}-range is empty: [{lo}, {hi}]")
    return lo, hi


def _count(name, n):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
        raise BadParameter(f"{name} must be an integer >= 2, got {n!r}")
    return int(n)


@dataclass(frozen=True)
class GridSpec:
    """Rectilinear grid with ``nx * ny * nz`` points at time ``t``.

    A degenerate range (``lo == hi``) is allowed; every point then shares
    that coordinate.
    """

    nx: int
    ny: int
    nz: int
    x_range: Tuple[float, float]
    y_range: Tuple[float, float]
    z_range: Tuple[float, float]
    t: float = 0.0

    def __post_init__(self):
        for name in ("nx", "ny", "nz"):
            object.__setattr__(self, name, _count(name, getattr(self, name)))
        for name in ("x", "y", "z"):
            object.__setattr__(self, f"{name}_range", _interval(name, getattr(self, f"{name}_range")))
        t = float(self.t)
        if not math.isfinite(t):
            raise BadParameter(f"t must be finite, got {self.t!r}")
        object.__setattr__(self, "t", t)

    @property
    def size(self) -> int:
        return self.nx * self.ny * self.nz

    def axes(self):
        return (
            np.linspace(*self.x_range, self.nx),
            np.linspace(*self.y_range, self.ny),
            np.linspace(*self.z_range, self.nz),
        )

    def points(self):
        """Flattened ``(x, y, z)`` coordinates in the ordering contract."""
        xs, ys, zs = self.axes()
        Z, Y, X = np.meshgrid(zs, ys, xs, indexing="ij")
        return X.ravel(), Y.ravel(), Z.ravel()

    def index(self, i, j, k):
        return i + self.nx * (j + self.ny * k)

    def as_dict(self) -> dict:
        return {
            "nx": self.nx,
            "ny": self.ny,
            "nz": self.nz,
            "x_range": list(self.x_range),
            "y_range": list(self.y_range),
            "z_range": list(self.z_range),
            "t": self.t,
        }


@dataclass(frozen=True)
class FieldBlock:
    grid: GridSpec
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    p: np.ndarray
    u: np.ndarray
    v: np.ndarray
    p_z: np.ndarray
    provenance: Dict[str, Any] = field(default_factory=dict)

    def extrema(self) -> Dict[str, Tuple[float, float]]:
        return {name: (float(getattr(self, name).min()), float(getattr(self, name).max())) for name in ("p", "u", "v", "p_z")}


def sample_grid(solution: Solution, grid: GridSpec, seed: Optional[int] = None) -> FieldBlock:
    """Evaluate ``p``, ``u``, ``v`` and ``p_z`` at every grid point."""
    H = solution.phys.H
    lo, hi = grid.z_range
    if lo < 0.0 or hi > H:
        raise DomainError(f"grid z-range [{lo}, {hi}] leaves the water column [0, {H}]")
    x, y, z = grid.points()
    sample = solution.eval(grid.t, x, y, z)
    provenance = {
        "spec": solution.spec.as_dict(),
        "physical": {"beta": solution.phys.beta, "H": H, "V": solution.phys.V},
        "mode": solution.mode.describe(),
        "seed": seed,
    }
    return FieldBlock(grid, x, y, z, sample.p, sample.u, sample.v, sample.p_z, provenance)


def _open_for_write(path):
    path = os.fspath(path)
    if not path:
        raise FieldIOError("output path is empty")
    try:
        return open(path, "w", encoding="ascii", newline="\n")
    except OSError as exc:
        raise FieldIOError(f"cannot write {path!r}: {exc.strerror or exc}") from exc


def _write(path, text):
    with _open_for_write(path) as fh:
        try:
            fh.write(text)
        except OSError as exc:
            raise FieldIOError(f"cannot write {path!r}: {exc.strerror or exc}") from exc


def export_csv(block: FieldBlock, path) -> None:
    """One row per grid point, 17 significant digits, LF line endings."""
    cols = np.column_stack([getattr(block, name) for name in CSV_HEADER])
    lines = [",".join(CSV_HEADER)]
    lines.extend(",".join("%.17g" % v for v in row) for row in cols)
    _write(path, "\n".join(lines) + "\n")


def read_csv(path) -> Dict[str, np.ndarray]:
    """Columns of a file written by :func:`export_csv`."""
    path = os.fspath(path)
    try:
        with open(path, encoding="ascii") as fh:
            header = fh.readline().strip().split(",")
            data = np.loadtxt(fh, delimiter=",", ndmin=2)
    except OSError as exc:
        raise FieldIOError(f"cannot read {path!r}: {exc.strerror or exc}") from exc
    return {name: data[:, i] for i, name in enumerate(header)}


def _vtk_numbers(values):
    return "\n".join("%.17g" % v for v in values)


def export_vtk(block: FieldBlock, path) -> None:
    """Legacy ASCII VTK rectilinear grid with scalars p, p_z and vector velocity."""
    g = block.grid
    xs, ys, zs = g.axes()
    n = g.size
    vel = np.column_stack([block.u, block.v, np.zeros(n)])
    parts = [
        "# vtk DataFile Version 3.0",
        "rossby_exact family %s" % block.provenance.get("spec", {}).get("family", "?"),
        "ASCII",
        "DATASET RECTILINEAR_GRID",
        f"DIMENSIONS {g.nx} {g.ny} {g.nz}",
        f"X_COORDINATES {g.nx} double",
        _vtk_numbers(xs),
        f"Y_COORDINATES {g.ny} double",
        _vtk_numbers(ys),
        f"Z_COORDINATES {g.nz} double",
        _vtk_numbers(zs),
        f"POINT_DATA {n}",
        "SCALARS p double 1",
        "LOOKUP_TABLE default",
        _vtk_numbers(block.p),
        "SCALARS p_z double 1",
        "LOOKUP_TABLE default",
        _vtk_numbers(block.p_z),
        "VECTORS velocity double",
        "\n".join("%.17g %.17g %.17g" % tuple(row) for row in vel),
    ]
    _write(path, "\n".join(parts) + "\n")


def _finite_or_none(v):
    v = float(v)
    return v if math.isfinite(v) else None


def report_to_dict(report: VerificationReport, config: Optional[dict] = None) -> dict:
    checks = {
        name: {
            "max": _finite_or_none(c.max),
            "mean": _finite_or_none(c.mean),
            "count": c.count,
            "tolerance": c.tolerance,
            "pass": c.passed,
        }
        for name, c in report.checks.items()
    }
    return {
        "format": REPORT_FORMAT,
        "pass": report.passed,
        "checks": checks,
        "spec": report.spec,
        "physical": report.physical,
        "mode": report.mode,
        "seed": report.seed,
        "n_points": report.n_points,
        "fd_step": report.fd_step,
        "config": config,
    }


def write_report(report: VerificationReport, path, config: Optional[dict] = None) -> None:
    """JSON report; ``config`` is echoed verbatim so the run can be repeated."""
    text = json.dumps(report_to_dict(report, config), indent=2, sort_keys=True, allow_nan=False)
    _write(path, text + "\n")


def export_sweep_csv(parameter: str, rows, resonances, path) -> None:
    """Columns ``parameter,M,denominator,resonant``; ``resonant`` is 1 on
    the sample that opens a bracketed sign change. NaN marks rows where the
    family's constraints fail."""
    opens = {r.lo for r in resonances}
    lines = [f"{parameter},M,denominator,resonant"]
    for row in rows:
        lines.append("%.17g,%.17g,%.17g,%d" % (row.value, row.M, row.denominator, row.value in opens))
    _write(path, "\n".join(lines) + "\n")
