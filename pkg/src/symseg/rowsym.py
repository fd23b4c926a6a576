"""Stack-based row homogenization.

Each row is processed independently: a work stack starts with the whole row;
a popped segment [first, last] reads its mid pixel (floor midpoint) and
either splits into [first, mid] / [mid+1, last] when any pixel deviates from
the mid by more than MT, or floods the segment with the quantized mid
intensity. Length-1 segments always homogenize to their own quantized value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backend import kernels
from .errors import ParameterError
from .image import GrayImage

__all__ = ["SymmetryParams", "process_row", "process_image"]


@dataclass(frozen=True)
class SymmetryParams:
    """MT deviation bound and quantization level count."""

    mt: int = 32
    levels: int = 8

    def __post_init__(self):
        if not 1 <= self.mt <= 255:
            raise ParameterError(f"mt must lie in [1, 255], got {self.mt}")
        if self.levels < 1 or 256 % self.levels != 0:
            raise ParameterError(f"levels must divide 256, got {self.levels}")


def process_row(row, params: SymmetryParams | None = None) -> np.ndarray:
    """Homogenize a single row; returns a new uint8 array."""
    if params is None:
        params = SymmetryParams()
    arr = np.asarray(row, np.uint8)
    if arr.ndim != 1 or len(arr) == 0:
        raise ParameterError(f"row must be a nonempty 1-D sequence, got shape {arr.shape}")
    return kernels.homogenize(arr.reshape(1, -1), params.mt, 256 // params.levels)[0]


def process_image(image: GrayImage, params: SymmetryParams | None = None) -> GrayImage:
    """Homogenize every row of an image independently."""
    if params is None:
        params = SymmetryParams()
    out = kernels.homogenize(image.data, params.mt, 256 // params.levels)
    return GrayImage(out)
