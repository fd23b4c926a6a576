"""End-to-end orchestration and canonical JSON reporting.

Stage order: gray conversion, row homogenization, Canny on the homogenized
image (``raw_edges`` switches Canny and the operator counts to the
unprocessed image), per-operator edge counts, midpoint extraction, axis fit,
asymmetry map, closing, component extraction, region selection with hole
filling, circle fit, area. Stage failures surface as
:class:`~symseg.errors.PipelineError` naming the stage.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import __version__
from .asymmetry import (
    BoundaryCircle,
    TumorReport,
    asymmetry_map,
    close_mask,
    compute_area,
    connected_components,
    fill_holes,
    fit_boundary_circle,
    region_from_mask,
    render_overlay,
    select_tumor_region,
)
from .axis import fit_axis, extract_midpoints
from .edges import CannyParams, DEFAULT_EDGE_THRESHOLD, canny, count_edges, gradient, threshold_edges
from .errors import DegenerateDataError, ParameterError, PipelineError, SymsegError
from .image import GrayImage, RgbImage, rgb_to_gray
from .rowsym import SymmetryParams, process_image

__all__ = [
    "PipelineConfig",
    "ReportDocument",
    "run_pipeline",
    "run_pipeline_detailed",
    "emit_report",
    "parse_report",
]


@dataclass(frozen=True)
class PipelineConfig:
    sigma: float = 1.4
    low: float = 0.1
    high: float = 0.3
    mt: int = 32
    quant_levels: int = 8
    axis_degree: int = 1
    tol: int = 2
    min_area: int = 30
    spacing: tuple[float, float] = (1.0, 1.0)
    raw_edges: bool = False

    def __post_init__(self):
        CannyParams(self.sigma, self.low, self.high)
        SymmetryParams(self.mt, self.quant_levels)
        if self.axis_degree not in (1, 2):
            raise ParameterError(f"axis degree must be 1 or 2, got {self.axis_degree}")
        if self.tol < 0:
            raise ParameterError(f"tol must be >= 0, got {self.tol}")
        if self.min_area < 1:
            raise ParameterError(f"min_area must be >= 1, got {self.min_area}")
        sx, sy = self.spacing
        if not (sx > 0 and sy > 0):
            raise ParameterError(f"spacing components must be positive, got {self.spacing}")


@dataclass(frozen=True)
class ReportDocument:
    """JSON-shaped report; float fields are pre-rounded to 6 significant
    digits so emit/parse round-trips are lossless."""

    input: str
    version: str
    config: dict
    edge_counts: dict
    axis: dict
    detected: bool
    area_px: int
    area_mm2: float
    circle: dict | None


def _round6(v: float) -> float:
    return float(f"{float(v):.6g}")


def _config_echo(config: PipelineConfig) -> dict:
    return {
        "sigma": _round6(config.sigma),
        "low": _round6(config.low),
        "high": _round6(config.high),
        "mt": config.mt,
        "quant_levels": config.quant_levels,
        "axis_degree": config.axis_degree,
        "tol": config.tol,
        "min_area": config.min_area,
        "spacing": [_round6(config.spacing[0]), _round6(config.spacing[1])],
        "raw_edges": config.raw_edges,
    }


class _Stage:
    """Re-raises package errors as PipelineError tagged with the stage name."""

    def __init__(self, name: str):
        self.name = name

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is not None and isinstance(exc, SymsegError) and not isinstance(exc, PipelineError):
            raise PipelineError(self.name, exc) from exc
        return False


def run_pipeline(
    image: GrayImage | RgbImage,
    config: PipelineConfig | None = None,
    input_name: str = "",
) -> tuple[ReportDocument, RgbImage]:
    """Run every stage and return the report plus the rendered overlay."""
    doc, overlay, _ = run_pipeline_detailed(image, config, input_name)
    return doc, overlay


def run_pipeline_detailed(
    image: GrayImage | RgbImage,
    config: PipelineConfig | None = None,
    input_name: str = "",
) -> tuple[ReportDocument, RgbImage, TumorReport]:
    """Like :func:`run_pipeline` but also returns the typed detection result."""
    if config is None:
        config = PipelineConfig()

    with _Stage("gray-convert"):
        gray = rgb_to_gray(image) if isinstance(image, RgbImage) else image

    with _Stage("row-symmetry"):
        homogenized = process_image(gray, SymmetryParams(config.mt, config.quant_levels))

    analysis = gray if config.raw_edges else homogenized

    with _Stage("edge-detect"):
        edge_map = canny(analysis, CannyParams(config.sigma, config.low, config.high))
        edge_counts = {
            "roberts": count_edges(threshold_edges(gradient(analysis, "roberts"), DEFAULT_EDGE_THRESHOLD)),
            "prewitt": count_edges(threshold_edges(gradient(analysis, "prewitt"), DEFAULT_EDGE_THRESHOLD)),
            "canny": count_edges(edge_map),
        }

    with _Stage("axis-fit"):
        midpoints = extract_midpoints(edge_map)
        axis = fit_axis(midpoints, config.axis_degree)
        cols = axis.column(np.arange(gray.height, dtype=np.float64))
        if np.any(cols < -gray.width) or np.any(cols > 2 * gray.width):
            raise DegenerateDataError("fitted axis leaves the image sanity bounds")

    with _Stage("asymmetry"):
        amap = asymmetry_map(edge_map, axis, config.tol)

    with _Stage("region-extract"):
        closed = close_mask(amap.enhanced)
        regions = connected_components(closed, 8)
        selected = select_tumor_region(regions, config.min_area)

    region = None
    circle = None
    area_px = 0
    area_mm2 = 0.0
    if selected is not None:
        with _Stage("region-fill"):
            region = region_from_mask(fill_holes(selected.mask(gray.width, gray.height)))
        with _Stage("circle-fit"):
            circle = fit_boundary_circle(region)
        with _Stage("area"):
            area_px, area_mm2 = compute_area(region, config.spacing)

    report = TumorReport(
        detected=region is not None,
        region=region,
        circle=circle,
        area_px=area_px,
        area_mm2=area_mm2,
        axis=axis,
        edge_counts=edge_counts,
    )

    with _Stage("overlay"):
        overlay = render_overlay(gray, report)

    doc = ReportDocument(
        input=input_name,
        version=__version__,
        config=_config_echo(config),
        edge_counts=dict(edge_counts),
        axis={
            "degree": axis.degree,
            "a0": _round6(axis.a0),
            "a1": _round6(axis.a1),
            "a2": None if axis.a2 is None else _round6(axis.a2),
            "sr": _round6(axis.sr),
        },
        detected=report.detected,
        area_px=int(area_px),
        area_mm2=_round6(area_mm2),
        circle=None
        if circle is None
        else {"cx": _round6(circle.cx), "cy": _round6(circle.cy), "r": _round6(circle.r)},
    )
    return doc, overlay, report


def emit_report(doc: ReportDocument) -> bytes:
    """Canonical JSON: fixed key order, 6-significant-digit floats,
    newline-terminated."""
    payload = {
        "input": doc.input,
        "version": doc.version,
        "config": doc.config,
        "edge_counts": {
            "roberts": doc.edge_counts["roberts"],
            "prewitt": doc.edge_counts["prewitt"],
            "canny": doc.edge_counts["canny"],
        },
        "axis": {
            "degree": doc.axis["degree"],
            "a0": doc.axis["a0"],
            "a1": doc.axis["a1"],
            "a2": doc.axis["a2"],
            "sr": doc.axis["sr"],
        },
        "detected": doc.detected,
        "area_px": doc.area_px,
        "area_mm2": doc.area_mm2,
        "circle": doc.circle,
    }
    return (json.dumps(payload, indent=2) + "\n").encode()


def parse_report(data: bytes) -> ReportDocument:
    raw = json.loads(data.decode())
    return ReportDocument(
        input=raw["input"],
        version=raw["version"],
        config=raw["config"],
        edge_counts=raw["edge_counts"],
        axis=raw["axis"],
        detected=raw["detected"],
        area_px=raw["area_px"],
        area_mm2=raw["area_mm2"],
        circle=raw["circle"],
    )
