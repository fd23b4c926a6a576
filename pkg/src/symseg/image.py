"""Image value types, gray conversion, and uniform intensity quantization.

Images are thin immutable wrappers around numpy arrays: 2-D ``uint8`` for
grayscale, ``(h, w, 3) uint8`` for RGB. The wrapped array is copied on
construction and marked read-only, so instances are safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

__all__ = ["GrayImage", "RgbImage", "rgb_to_gray", "quantize_intensity"]

# ITU-R BT.601 luma weights.
_LUMA_R = 0.299
_LUMA_G = 0.587
_LUMA_B = 0.114


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Rectangular grid of 8-bit intensities, row-major."""

    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ParameterError(f"gray image must be 2-D and non-empty, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if np.any(arr < 0) or np.any(arr > 255):
                raise ParameterError("gray intensities must lie in [0, 255]")
            arr = arr.astype(np.uint8)
        else:
            arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, GrayImage) and np.array_equal(self.data, other.data)

    def __repr__(self) -> str:
        return f"GrayImage({self.width}x{self.height})"


@dataclass(frozen=True, eq=False)
class RgbImage:
    """Rectangular grid of (red, green, blue) triples, each 0-255."""

    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.ndim != 3 or arr.shape[2] != 3 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ParameterError(f"rgb image must have shape (h, w, 3), got {arr.shape}")
        if arr.dtype != np.uint8:
            if np.any(arr < 0) or np.any(arr > 255):
                raise ParameterError("rgb intensities must lie in [0, 255]")
            arr = arr.astype(np.uint8)
        else:
            arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, RgbImage) and np.array_equal(self.data, other.data)

    def __repr__(self) -> str:
        return f"RgbImage({self.width}x{self.height})"


def rgb_to_gray(image: RgbImage) -> GrayImage:
    """Convert RGB to gray with BT.601 weights, rounding ties half up.

    gray = round(0.299*R + 0.587*G + 0.114*B)
    """
    rgb = image.data.astype(np.float64)
    luma = _LUMA_R * rgb[:, :, 0] + _LUMA_G * rgb[:, :, 1] + _LUMA_B * rgb[:, :, 2]
    # floor(x + 0.5) rounds half up; np.round would round half to even.
    gray = np.floor(luma + 0.5).astype(np.uint8)
    return GrayImage(gray)


def quantize_intensity(v: int, levels: int = 8) -> int:
    """Map an intensity to the midpoint of its uniform quantization bin.

    With bin width w = 256 // levels the result is w*floor(v/w) + w//2.
    ``levels`` must divide 256.
    """
    if levels < 1 or 256 % levels != 0:
        raise ParameterError(f"levels must divide 256, got {levels}")
    if not 0 <= v <= 255:
        raise ParameterError(f"intensity must lie in [0, 255], got {v}")
    w = 256 // levels
    return w * (int(v) // w) + w // 2


def quantize_array(values: np.ndarray, levels: int = 8) -> np.ndarray:
    """Vectorized :func:`quantize_intensity` over a uint8 array."""
    if levels < 1 or 256 % levels != 0:
        raise ParameterError(f"levels must divide 256, got {levels}")
    w = 256 // levels
    v = values.astype(np.int32)
    return (w * (v // w) + w // 2).astype(np.uint8)
