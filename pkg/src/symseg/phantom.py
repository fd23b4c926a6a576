"""Synthetic brain phantoms with known symmetry axes and planted tumors.

Phantoms are built exactly mirror-symmetric about the planted axis (skull
ellipse outline plus mirrored sinusoidal interior texture), then an optional
tumor disk is stamped on one side, then seeded Gaussian noise is added with
the portable generator from :mod:`symseg.rng`. Output is deterministic for a
fixed spec.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .image import GrayImage
from .rng import Lcg64

__all__ = ["TumorSpec", "PhantomSpec", "GroundTruth", "generate_phantom", "phantom_suite"]

# Fraction of the skull semi-axes where the skull ring starts; brain tissue
# fills the interior.
_SKULL_INNER = 0.92

# Mirrored interior texture (gives the edge operators interior structure).
_TEXTURE_AMP = 10.0
_TEXTURE_WAVELENGTH = (23.0, 17.0)

# Unmirrored texture stamped inside "textured" (high-grade) tumors.
_TUMOR_TEXTURE_AMP = 34.0
_TUMOR_TEXTURE_WAVELENGTH = (6.0, 7.0)


@dataclass(frozen=True)
class TumorSpec:
    cx: float
    cy: float
    radius: float
    delta: float
    textured: bool = False


@dataclass(frozen=True)
class PhantomSpec:
    width: int = 256
    height: int = 256
    axis_a0: float = 127.5
    axis_a1: float = 0.0
    skull_rx: float = 92.0
    skull_ry: float = 112.0
    background: int = 12
    brain: int = 108
    skull: int = 204
    tumor: TumorSpec | None = None
    noise_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        for name in ("background", "brain", "skull"):
            v = getattr(self, name)
            if not 0 <= v <= 255:
                raise ParameterError(f"{name} intensity must lie in [0, 255], got {v}")
        if self.width < 8 or self.height < 8:
            raise ParameterError(f"phantom must be at least 8x8, got {self.width}x{self.height}")
        if self.noise_sigma < 0:
            raise ParameterError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if self.tumor is not None:
            t = self.tumor
            cy0 = (self.height - 1) / 2.0
            acol = self.axis_a0 + self.axis_a1 * t.cy
            nx = (abs(t.cx - acol) + t.radius) / (self.skull_rx * _SKULL_INNER)
            ny = (abs(t.cy - cy0) + t.radius) / (self.skull_ry * _SKULL_INNER)
            if nx * nx + ny * ny > 1.0:
                raise ParameterError("tumor does not fit inside the brain ellipse")


@dataclass(frozen=True, eq=False)
class GroundTruth:
    axis_a0: float
    axis_a1: float
    tumor_mask: np.ndarray = field(repr=False)
    tumor_area_px: int = 0


def generate_phantom(spec: PhantomSpec) -> tuple[GrayImage, GroundTruth]:
    """Render a phantom image and its machine-readable ground truth."""
    w, h = spec.width, spec.height
    cy0 = (h - 1) / 2.0
    ys = np.arange(h, dtype=np.float64)
    # Doubled snapped axis column per row; dx is the half-integer offset from
    # the axis, so any function of |dx| is exactly mirror-symmetric.
    c2 = np.floor(2.0 * (spec.axis_a0 + spec.axis_a1 * ys) + 0.5)
    xs = np.arange(w, dtype=np.float64)
    adx = np.abs((2.0 * xs[None, :] - c2[:, None]) / 2.0)
    ry = (ys[:, None] - cy0) / spec.skull_ry
    re = np.sqrt((adx / spec.skull_rx) ** 2 + ry * ry)

    lx, ly = _TEXTURE_WAVELENGTH
    texture = _TEXTURE_AMP * np.cos(2.0 * math.pi * adx / lx) * np.cos(2.0 * math.pi * ys[:, None] / ly)
    img = np.where(
        re > 1.0,
        float(spec.background),
        np.where(re >= _SKULL_INNER, float(spec.skull), spec.brain + texture),
    )

    tumor_mask = np.zeros((h, w), bool)
    if spec.tumor is not None:
        t = spec.tumor
        dtx = xs[None, :] - t.cx
        dty = ys[:, None] - t.cy
        tumor_mask = dtx * dtx + dty * dty <= t.radius * t.radius
        img = img + np.where(tumor_mask, t.delta, 0.0)
        if t.textured:
            tx, ty = _TUMOR_TEXTURE_WAVELENGTH
            pattern = (
                _TUMOR_TEXTURE_AMP
                * np.cos(2.0 * math.pi * xs[None, :] / tx)
                * np.cos(2.0 * math.pi * ys[:, None] / ty)
            )
            img = img + np.where(tumor_mask, pattern, 0.0)

    if spec.noise_sigma > 0:
        rng = Lcg64(spec.seed)
        noise = np.array([rng.normal() for _ in range(h * w)], np.float64).reshape(h, w)
        img = img + spec.noise_sigma * noise

    out = np.clip(np.floor(img + 0.5), 0, 255).astype(np.uint8)
    truth = GroundTruth(
        axis_a0=spec.axis_a0,
        axis_a1=spec.axis_a1,
        tumor_mask=tumor_mask,
        tumor_area_px=int(tumor_mask.sum()),
    )
    return GrayImage(out), truth


def phantom_suite() -> list[tuple[PhantomSpec, str]]:
    """Fixed 6-phantom suite: 3 high-grade (large, textured tumor) and
    3 low-grade (small, smooth tumor)."""
    common = dict(width=256, height=256, skull_rx=92.0, skull_ry=112.0,
                  background=12, brain=108, skull=204, noise_sigma=5.0)
    high = [
        PhantomSpec(axis_a0=127.5, axis_a1=0.0, seed=101,
                    tumor=TumorSpec(cx=170.0, cy=112.0, radius=22.0, delta=88.0, textured=True),
                    **common),
        PhantomSpec(axis_a0=124.0, axis_a1=0.03, seed=102,
                    tumor=TumorSpec(cx=82.0, cy=150.0, radius=20.0, delta=92.0, textured=True),
                    **common),
        PhantomSpec(axis_a0=131.5, axis_a1=-0.02, seed=103,
                    tumor=TumorSpec(cx=178.0, cy=140.0, radius=24.0, delta=84.0, textured=True),
                    **common),
    ]
    low = [
        PhantomSpec(axis_a0=127.5, axis_a1=0.0, seed=104,
                    tumor=TumorSpec(cx=168.0, cy=118.0, radius=10.0, delta=72.0), **common),
        PhantomSpec(axis_a0=125.0, axis_a1=0.02, seed=105,
                    tumor=TumorSpec(cx=88.0, cy=142.0, radius=11.0, delta=76.0), **common),
        PhantomSpec(axis_a0=130.0, axis_a1=-0.03, seed=106,
                    tumor=TumorSpec(cx=172.0, cy=104.0, radius=10.0, delta=70.0), **common),
    ]
    return [(s, "high") for s in high] + [(s, "low") for s in low]
