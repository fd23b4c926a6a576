"""Symmetry-axis estimation from edge maps and reflection across it.

The axis is fitted as column = a0 + a1*row [+ a2*row**2] (column as the
response, so a near-vertical axis has a small, well-behaved slope). Per-row
axis positions are snapped to the nearest half-integer, which makes the
row-wise reflection an exact involution on the pixel grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .edges import EdgeMap
from .errors import DegenerateDataError, ParameterError
from .lsq import build_normal_system, cramer_solve, fit_line, hadamard_bound

__all__ = [
    "AxisModel",
    "MidpointSample",
    "ReflectedPoint",
    "extract_midpoints",
    "fit_axis",
    "reflect_across_axis",
    "snap_half",
    "snapped_axis_2x",
]

# Relative |det| threshold for the degree-2 normal equations; the raw
# (row, row**2) basis is ill-conditioned, so singularity is judged against
# the Hadamard bound rather than cramer_solve's default entry-cube rule.
_AXIS_DET_RTOL = 1e-12


@dataclass(frozen=True)
class AxisModel:
    """Coefficients of the symmetry curve column(y) = a0 + a1*y [+ a2*y**2]."""

    degree: int
    a0: float
    a1: float
    a2: float | None
    sr: float

    def __post_init__(self):
        if self.degree not in (1, 2):
            raise ParameterError(f"axis degree must be 1 or 2, got {self.degree}")
        if (self.degree == 2) != (self.a2 is not None):
            raise ParameterError("a2 must be present exactly for degree 2")

    def column(self, y):
        """Axis column at row(s) ``y``."""
        if self.a2 is None:
            return self.a0 + self.a1 * y
        return self.a0 + self.a1 * y + self.a2 * (y * y)


class MidpointSample(NamedTuple):
    row: int
    midpoint: float


class ReflectedPoint(NamedTuple):
    x: int
    y: int
    in_bounds: bool


def extract_midpoints(edges: EdgeMap) -> list[MidpointSample]:
    """Midpoint of the outermost edge pixels in each row.

    Rows with fewer than two edge pixels are skipped; fewer than three usable
    rows overall raises :class:`DegenerateDataError`.
    """
    out = []
    mask = edges.mask
    for y in range(edges.height):
        cols = np.nonzero(mask[y])[0]
        if len(cols) >= 2:
            out.append(MidpointSample(row=y, midpoint=(int(cols[0]) + int(cols[-1])) / 2.0))
    if len(out) < 3:
        raise DegenerateDataError(f"only {len(out)} rows have a usable boundary; need at least 3")
    return out


def fit_axis(samples, degree: int = 1) -> AxisModel:
    """Least-squares axis fit over midpoint samples.

    Degree 1 is a straight-line fit; degree 2 builds the two-regressor
    normal equations with x1 = row, x2 = row**2 and solves them by Cramer's
    rule.
    """
    if degree not in (1, 2):
        raise ParameterError(f"axis degree must be 1 or 2, got {degree}")
    rows = np.array([s[0] for s in samples], np.float64)
    mids = np.array([s[1] for s in samples], np.float64)
    if len(rows) < degree + 1 or len(np.unique(rows)) < degree + 1:
        raise DegenerateDataError(
            f"degree {degree} needs {degree + 1} samples with distinct rows, got {len(rows)}"
        )
    if degree == 1:
        fit = fit_line(np.column_stack([rows, mids]))
        return AxisModel(degree=1, a0=fit.a0, a1=fit.a1, a2=None, sr=fit.sr)
    system = build_normal_system(np.column_stack([rows, rows * rows, mids]))
    eps = _AXIS_DET_RTOL * max(1.0, hadamard_bound(system.matrix))
    a0, a1, a2 = cramer_solve(system, eps_singular=eps)
    r = mids - a0 - a1 * rows - a2 * (rows * rows)
    return AxisModel(degree=2, a0=a0, a1=a1, a2=a2, sr=float((r * r).sum()))


def snap_half(v: float) -> float:
    """Round to the nearest half-integer (ties toward +inf)."""
    return math.floor(2.0 * v + 0.5) / 2.0


def snapped_axis_2x(axis: AxisModel, height: int) -> np.ndarray:
    """Twice the snapped axis column per row, as integers.

    reflect(x) = snapped_axis_2x[y] - x, which keeps reflection exact on the
    pixel grid.
    """
    ys = np.arange(height, dtype=np.float64)
    return np.floor(2.0 * axis.column(ys) + 0.5).astype(np.int64)


def reflect_across_axis(point, axis: AxisModel, width: int) -> ReflectedPoint:
    """Reflect (x, y) horizontally across the snapped axis column of its row.

    Out-of-bounds results are flagged, not raised.
    """
    x, y = int(point[0]), int(point[1])
    s2 = int(math.floor(2.0 * float(axis.column(y)) + 0.5))
    xr = s2 - x
    return ReflectedPoint(x=xr, y=y, in_bounds=0 <= xr < width)
