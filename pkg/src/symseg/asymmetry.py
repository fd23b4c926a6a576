"""Asymmetry scoring across the fitted axis and tumor-region extraction.

Edge pixels whose reflection has an edge counterpart within a Chebyshev
tolerance are "weakened"; the rest are "enhanced" and indicate asymmetry.
Enhanced pixels are closed morphologically, labeled, and the largest
sufficiently large component (hole-filled) becomes the tumor candidate, with
an algebraic least-squares boundary circle and pixel/physical areas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .axis import AxisModel, snapped_axis_2x
from .backend import kernels
from .edges import EdgeMap
from .errors import DegenerateDataError, ParameterError, SingularSystemError
from .image import GrayImage, RgbImage
from .lsq import build_normal_system, cramer_solve

__all__ = [
    "AsymmetryMap",
    "Region",
    "BoundaryCircle",
    "TumorReport",
    "asymmetry_map",
    "connected_components",
    "close_mask",
    "fill_holes",
    "select_tumor_region",
    "region_from_mask",
    "fit_boundary_circle",
    "fit_circle_points",
    "compute_area",
    "render_overlay",
]


@dataclass(frozen=True, eq=False)
class AsymmetryMap:
    """Partition of edge pixels into weakened (mirrored) and enhanced."""

    enhanced: np.ndarray = field(repr=False)
    weakened: np.ndarray = field(repr=False)

    @property
    def width(self) -> int:
        return self.enhanced.shape[1]

    @property
    def height(self) -> int:
        return self.enhanced.shape[0]

    @property
    def enhanced_count(self) -> int:
        return int(np.count_nonzero(self.enhanced))

    @property
    def weakened_count(self) -> int:
        return int(np.count_nonzero(self.weakened))


@dataclass(frozen=True, eq=False)
class Region:
    """An 8-connected pixel component with derived geometry.

    ``pixels`` holds (x, y) pairs in row-major scan order.
    """

    pixels: np.ndarray = field(repr=False)
    area_px: int
    centroid: tuple[float, float]
    bbox: tuple[int, int, int, int]  # min_x, max_x, min_y, max_y

    def mask(self, width: int, height: int) -> np.ndarray:
        out = np.zeros((height, width), bool)
        out[self.pixels[:, 1], self.pixels[:, 0]] = True
        return out


@dataclass(frozen=True)
class BoundaryCircle:
    cx: float
    cy: float
    r: float


@dataclass(frozen=True, eq=False)
class TumorReport:
    """Detection outcome with areas, boundary circle, axis, and edge counts."""

    detected: bool
    region: Region | None
    circle: BoundaryCircle | None
    area_px: int
    area_mm2: float
    axis: AxisModel
    edge_counts: dict


def asymmetry_map(edges: EdgeMap, axis: AxisModel, tol: int = 2) -> AsymmetryMap:
    """Classify each edge pixel by whether its reflection has an edge
    counterpart within Chebyshev distance ``tol``.

    Reflections landing out of bounds count as unmatched (enhanced).
    """
    if tol < 0:
        raise ParameterError(f"tol must be >= 0, got {tol}")
    s2 = snapped_axis_2x(axis, edges.height)
    enhanced = kernels.reflect_match(edges.mask, s2, int(tol))
    weakened = edges.mask & ~enhanced
    return AsymmetryMap(enhanced=enhanced, weakened=weakened)


def _region_from_coords(ys: np.ndarray, xs: np.ndarray) -> Region:
    return Region(
        pixels=np.column_stack([xs, ys]).astype(np.int32),
        area_px=len(xs),
        centroid=(float(xs.mean()), float(ys.mean())),
        bbox=(int(xs.min()), int(xs.max()), int(ys.min()), int(ys.max())),
    )


def connected_components(mask: np.ndarray, connectivity: int = 8) -> list[Region]:
    """Maximal connected components of set pixels in a canonical order:
    area descending, ties broken by bbox (min y, then min x)."""
    if connectivity not in (4, 8):
        raise ParameterError(f"connectivity must be 4 or 8, got {connectivity}")
    mask = np.asarray(mask, bool)
    labels = kernels.label_regions(mask, connectivity)
    flat = labels.ravel()
    idx = np.nonzero(flat)[0]
    if len(idx) == 0:
        return []
    order = np.argsort(flat[idx], kind="stable")
    idx = idx[order]
    bounds = np.searchsorted(flat[idx], np.arange(1, flat[idx][-1] + 2))
    w = mask.shape[1]
    regions = []
    start = 0
    for end in bounds:
        if end > start:
            ys, xs = np.divmod(idx[start:end], w)
            regions.append(_region_from_coords(ys, xs))
        start = end
    regions.sort(key=lambda r: (-r.area_px, r.bbox[2], r.bbox[0]))
    return regions


def close_mask(mask: np.ndarray) -> np.ndarray:
    """One pass of 3x3 morphological closing (dilation then erosion)."""
    return kernels.erode3(kernels.dilate3(np.asarray(mask, bool)))


def fill_holes(mask: np.ndarray) -> np.ndarray:
    """Fill background pockets not connected (4-connectivity) to the border."""
    mask = np.asarray(mask, bool)
    comp = kernels.label_regions(~mask, 4)
    border = np.unique(np.concatenate([comp[0, :], comp[-1, :], comp[:, 0], comp[:, -1]]))
    border = border[border != 0]
    holes = ~mask & ~np.isin(comp, border)
    return mask | holes


def select_tumor_region(regions: list[Region], min_area: int = 30) -> Region | None:
    """Largest region with area >= min_area, or None."""
    if min_area < 1:
        raise ParameterError(f"min_area must be >= 1, got {min_area}")
    for region in regions:
        if region.area_px >= min_area:
            return region
    return None


def region_from_mask(mask: np.ndarray) -> Region:
    ys, xs = np.nonzero(np.asarray(mask, bool))
    if len(ys) == 0:
        raise DegenerateDataError("region mask is empty")
    return _region_from_coords(ys, xs)


def _boundary_points(region: Region) -> np.ndarray:
    """Region pixels with a 4-neighbor outside the region (image border
    counts as outside)."""
    min_x, max_x, min_y, max_y = region.bbox
    w = max_x - min_x + 3
    h = max_y - min_y + 3
    local = np.zeros((h, w), bool)
    local[region.pixels[:, 1] - min_y + 1, region.pixels[:, 0] - min_x + 1] = True
    interior = local[:-2, 1:-1] & local[2:, 1:-1] & local[1:-1, :-2] & local[1:-1, 2:]
    boundary = local[1:-1, 1:-1] & ~interior
    ys, xs = np.nonzero(boundary)
    return np.column_stack([xs + min_x, ys + min_y]).astype(np.float64)


def fit_circle_points(points: np.ndarray) -> BoundaryCircle:
    """Algebraic circle fit x**2 + y**2 = c0 + c1*x + c2*y over points.

    A 3-unknown linear least-squares problem: the normal equations are built
    with x1 = x, x2 = y, response x**2 + y**2 and solved by Cramer's rule.
    """
    pts = np.asarray(points, np.float64)
    x, y = pts[:, 0], pts[:, 1]
    system = build_normal_system(np.column_stack([x, y, x * x + y * y]))
    c0, c1, c2 = cramer_solve(system)
    rsq = c0 + c1 * c1 / 4.0 + c2 * c2 / 4.0
    if rsq <= 0:
        raise SingularSystemError(f"degenerate circle fit: r**2 = {rsq:.3e}")
    return BoundaryCircle(cx=c1 / 2.0, cy=c2 / 2.0, r=math.sqrt(rsq))


def fit_boundary_circle(region: Region) -> BoundaryCircle:
    """Circle minimizing the algebraic residual over the region boundary."""
    return fit_circle_points(_boundary_points(region))


def compute_area(region: Region, spacing: tuple[float, float] = (1.0, 1.0)) -> tuple[int, float]:
    """Pixel count and physical area under the given pixel spacing (mm)."""
    sx, sy = spacing
    if not (sx > 0 and sy > 0):
        raise ParameterError(f"spacing components must be positive, got {spacing}")
    return region.area_px, region.area_px * sx * sy


def _circle_pixels(cx: int, cy: int, r: int) -> list[tuple[int, int]]:
    """Midpoint circle rasterization."""
    if r <= 0:
        return [(cx, cy)]
    pts = []
    x, y, d = r, 0, 1 - r
    while x >= y:
        pts.extend(
            [
                (cx + x, cy + y),
                (cx - x, cy + y),
                (cx + x, cy - y),
                (cx - x, cy - y),
                (cx + y, cy + x),
                (cx - y, cy + x),
                (cx + y, cy - x),
                (cx - y, cy - x),
            ]
        )
        y += 1
        if d < 0:
            d += 2 * y + 1
        else:
            x -= 1
            d += 2 * (y - x) + 1
    return pts


def _round_half_up(v: float) -> int:
    return int(math.floor(v + 0.5))


def render_overlay(image: GrayImage, report: TumorReport) -> RgbImage:
    """Overlay: red-tinted region (50% blend), green fitted circle (midpoint
    rasterization), blue axis column per row. The axis is drawn last and wins
    overlaps."""
    gray = image.data
    h, w = gray.shape
    out = np.repeat(gray[:, :, None], 3, axis=2).astype(np.int32)
    if report.region is not None:
        xs = report.region.pixels[:, 0]
        ys = report.region.pixels[:, 1]
        g = gray[ys, xs].astype(np.int32)
        out[ys, xs, 0] = (g + 255) // 2
        out[ys, xs, 1] = g // 2
        out[ys, xs, 2] = g // 2
    if report.circle is not None:
        cx = _round_half_up(report.circle.cx)
        cy = _round_half_up(report.circle.cy)
        r = _round_half_up(report.circle.r)
        for x, y in _circle_pixels(cx, cy, r):
            if 0 <= x < w and 0 <= y < h:
                out[y, x] = (0, 255, 0)
    s2 = snapped_axis_2x(report.axis, h)
    for y in range(h):
        col = (int(s2[y]) + 1) // 2
        if 0 <= col < w:
            out[y, col] = (0, 0, 255)
    return RgbImage(out.astype(np.uint8))
