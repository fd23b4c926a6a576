"""Gradient operators (Roberts, Prewitt, Sobel), Canny detector, edge counting.

All convolutions replicate border pixels. Gaussian taps are quantized to
multiples of 2**-15 and corrected to sum to exactly 1.0, which makes the
separable blur of an 8-bit image exact dyadic arithmetic: constant images
stay exactly constant and adding a constant to every pixel leaves all
gradients (hence the Canny output) bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .backend import kernels
from .errors import DimensionError, ParameterError
from .image import GrayImage

__all__ = [
    "GradientField",
    "EdgeMap",
    "CannyParams",
    "gradient",
    "threshold_edges",
    "canny",
    "count_edges",
    "gaussian_kernel",
    "gaussian_smooth",
]

OPERATORS = ("roberts", "prewitt", "sobel")

# Default fraction of the max magnitude used to binarize Roberts/Prewitt maps.
DEFAULT_EDGE_THRESHOLD = 0.1

_KERNEL_SCALE = 1 << 15


@dataclass(frozen=True, eq=False)
class GradientField:
    """Per-pixel signed gradient components, magnitude, and orientation."""

    gx: np.ndarray = field(repr=False)
    gy: np.ndarray = field(repr=False)
    magnitude: np.ndarray = field(repr=False)
    orientation: np.ndarray = field(repr=False)

    @property
    def width(self) -> int:
        return self.gx.shape[1]

    @property
    def height(self) -> int:
        return self.gx.shape[0]


@dataclass(frozen=True, eq=False)
class EdgeMap:
    """Binary grid marking edge pixels."""

    mask: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.mask, dtype=bool)
        if m.ndim != 2:
            raise ParameterError(f"edge mask must be 2-D, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "mask", m)

    @property
    def width(self) -> int:
        return self.mask.shape[1]

    @property
    def height(self) -> int:
        return self.mask.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, EdgeMap) and np.array_equal(self.mask, other.mask)


@dataclass(frozen=True)
class CannyParams:
    """Gaussian sigma plus hysteresis thresholds as fractions of the max
    gradient magnitude."""

    sigma: float = 1.4
    low: float = 0.1
    high: float = 0.3

    def __post_init__(self):
        if not self.sigma > 0:
            raise ParameterError(f"sigma must be positive, got {self.sigma}")
        if not 0 < self.low < self.high <= 1:
            raise ParameterError(f"need 0 < low < high <= 1, got low={self.low} high={self.high}")


def gaussian_kernel(sigma: float) -> np.ndarray:
    """1-D Gaussian taps truncated at 3*sigma, summing to exactly 1.0.

    Taps are multiples of 2**-15; the center tap absorbs the quantization
    residual.
    """
    if not sigma > 0:
        raise ParameterError(f"sigma must be positive, got {sigma}")
    r = max(1, int(math.floor(3.0 * sigma)))
    xs = np.arange(-r, r + 1, dtype=np.float64)
    taps = np.exp(-(xs * xs) / (2.0 * sigma * sigma))
    taps /= taps.sum()
    k = np.floor(taps * _KERNEL_SCALE + 0.5).astype(np.int64)
    k[r] += _KERNEL_SCALE - k.sum()
    if k[r] <= 0:
        raise ParameterError(f"sigma {sigma} too large for kernel quantization")
    return k.astype(np.float64) / _KERNEL_SCALE


def gaussian_smooth(image: GrayImage, sigma: float) -> np.ndarray:
    """Separable Gaussian blur of an image, returned as float64."""
    taps = gaussian_kernel(sigma)
    return kernels.gaussian_separable(image.data.astype(np.float64), taps)


def gradient(image: GrayImage, operator: str) -> GradientField:
    """Apply a named gradient operator with replicate-border handling."""
    if operator not in OPERATORS:
        raise ParameterError(f"unknown operator {operator!r}, expected one of {OPERATORS}")
    min_side = 2 if operator == "roberts" else 3
    if image.width < min_side or image.height < min_side:
        raise DimensionError(
            f"{operator} needs at least {min_side}x{min_side}, got {image.width}x{image.height}"
        )
    img = image.data.astype(np.float64)
    if operator == "roberts":
        gx, gy = kernels.roberts_grad(img)
    elif operator == "prewitt":
        gx, gy = kernels.prewitt_grad(img)
    else:
        gx, gy = kernels.sobel_grad(img)
    return _field_from_grad(gx, gy)


def _field_from_grad(gx: np.ndarray, gy: np.ndarray) -> GradientField:
    magnitude = np.sqrt(gx * gx + gy * gy)
    orientation = np.arctan2(gy, gx)
    return GradientField(gx=gx, gy=gy, magnitude=magnitude, orientation=orientation)


def threshold_edges(fld: GradientField, t: float = DEFAULT_EDGE_THRESHOLD) -> EdgeMap:
    """Binarize a gradient field at a fraction ``t`` of its max magnitude."""
    if not 0 < t <= 1:
        raise ParameterError(f"threshold fraction must lie in (0, 1], got {t}")
    mmax = float(fld.magnitude.max())
    if mmax == 0.0:
        return EdgeMap(np.zeros(fld.magnitude.shape, bool))
    return EdgeMap(fld.magnitude >= t * mmax)


def canny(image: GrayImage, params: CannyParams | None = None) -> EdgeMap:
    """Full Canny pipeline: blur, Sobel, 4-direction NMS, hysteresis.

    Thresholds are fractions of the maximum (pre-suppression) gradient
    magnitude; weak pixels survive iff 8-connected, transitively, to a
    strong pixel.
    """
    if params is None:
        params = CannyParams()
    if image.width < 3 or image.height < 3:
        raise DimensionError(f"canny needs at least 3x3, got {image.width}x{image.height}")
    smoothed = gaussian_smooth(image, params.sigma)
    gx, gy = kernels.sobel_grad(smoothed)
    mag = np.sqrt(gx * gx + gy * gy)
    mmax = float(mag.max())
    if mmax == 0.0:
        return EdgeMap(np.zeros(mag.shape, bool))
    suppressed = kernels.nms(mag, gx, gy)
    mask = kernels.hysteresis(suppressed, params.low * mmax, params.high * mmax)
    return EdgeMap(mask)


def count_edges(edge_map: EdgeMap) -> int:
    """Number of set pixels."""
    return int(np.count_nonzero(edge_map.mask))
