"""Least-squares fitting and Cramer's-rule solving for small systems.

Covers straight-line fits, the two-regressor normal equations, 2x2/3x3
determinants by cofactor expansion, and solving the 3x3 system as ratios of
determinants. All arithmetic is float64.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateDataError, ParameterError, SingularSystemError

__all__ = [
    "LinearFit",
    "NormalSystem",
    "fit_line",
    "residuals",
    "build_normal_system",
    "determinant",
    "cramer_solve",
    "hadamard_bound",
]


@dataclass(frozen=True)
class LinearFit:
    """Fitted coefficients and the minimized sum of squared residuals."""

    a0: float
    a1: float
    a2: float | None
    sr: float


@dataclass(frozen=True, eq=False)
class NormalSystem:
    """3x3 normal-equation matrix with its right-hand side."""

    matrix: np.ndarray = field(repr=False)
    rhs: np.ndarray = field(repr=False)
    n: int = 0

    def __post_init__(self):
        m = np.asarray(self.matrix, np.float64)
        r = np.asarray(self.rhs, np.float64)
        if m.shape != (3, 3) or r.shape != (3,):
            raise ParameterError(f"expected 3x3 matrix and length-3 rhs, got {m.shape}, {r.shape}")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "rhs", r)


def _as_samples(samples, arity: int) -> np.ndarray:
    arr = np.asarray(list(samples) if not isinstance(samples, np.ndarray) else samples, np.float64)
    if arr.ndim != 2 or arr.shape[1] != arity:
        raise ParameterError(f"expected samples of arity {arity}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ParameterError("samples must be finite")
    return arr


def fit_line(samples) -> LinearFit:
    """Fit y = a0 + a1*x by least squares over (x, y) pairs."""
    arr = _as_samples(samples, 2)
    if len(arr) < 2:
        raise DegenerateDataError(f"need at least 2 samples, got {len(arr)}")
    x, y = arr[:, 0], arr[:, 1]
    if np.all(x == x[0]):
        raise DegenerateDataError("all x values equal; slope is undetermined")
    n = float(len(arr))
    sx = float(x.sum())
    sxx = float((x * x).sum())
    sy = float(y.sum())
    sxy = float((x * y).sum())
    d = determinant([[n, sx], [sx, sxx]])
    a0 = determinant([[sy, sx], [sxy, sxx]]) / d
    a1 = determinant([[n, sy], [sx, sxy]]) / d
    r = y - a0 - a1 * x
    return LinearFit(a0=a0, a1=a1, a2=None, sr=float((r * r).sum()))


def residuals(fit: LinearFit, samples) -> np.ndarray:
    """Per-sample errors e_i = y_i - a0 - a1*x1_i [- a2*x2_i]."""
    if fit.a2 is None:
        arr = _as_samples(samples, 2)
        return arr[:, 1] - fit.a0 - fit.a1 * arr[:, 0]
    arr = _as_samples(samples, 3)
    return arr[:, 2] - fit.a0 - fit.a1 * arr[:, 0] - fit.a2 * arr[:, 1]


def build_normal_system(samples) -> NormalSystem:
    """Assemble the 3x3 normal equations for y = a0 + a1*x1 + a2*x2.

    Input samples are (x1, x2, y) triples.
    """
    arr = _as_samples(samples, 3)
    if len(arr) < 3:
        raise DegenerateDataError(f"need at least 3 samples, got {len(arr)}")
    x1, x2, y = arr[:, 0], arr[:, 1], arr[:, 2]
    n = float(len(arr))
    s1 = float(x1.sum())
    s2 = float(x2.sum())
    s11 = float((x1 * x1).sum())
    s12 = float((x1 * x2).sum())
    s22 = float((x2 * x2).sum())
    matrix = np.array([[n, s1, s2], [s1, s11, s12], [s2, s12, s22]])
    rhs = np.array([float(y.sum()), float((x1 * y).sum()), float((x2 * y).sum())])
    return NormalSystem(matrix=matrix, rhs=rhs, n=len(arr))


def determinant(matrix) -> float:
    """2x2 or 3x3 determinant by cofactor expansion."""
    m = np.asarray(matrix, np.float64)
    if m.shape == (2, 2):
        return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    if m.shape == (3, 3):
        return float(
            m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
            - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
            + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
        )
    raise ParameterError(f"determinant supports 2x2 and 3x3 only, got shape {m.shape}")


def hadamard_bound(matrix) -> float:
    """Product of row norms: an upper bound on |det| used for scale-aware
    singularity thresholds."""
    m = np.asarray(matrix, np.float64)
    return float(np.prod(np.sqrt((m * m).sum(axis=1))))


def cramer_solve(system: NormalSystem, eps_singular: float | None = None) -> tuple[float, float, float]:
    """Solve the 3x3 system by ratios of determinants.

    Each unknown is det of the matrix with its column replaced by the rhs,
    divided by det of the matrix. When ``eps_singular`` is None the default
    threshold 1e-10 * max(1, max|entry|**3) is used; systems at or below it
    raise :class:`SingularSystemError` instead of returning garbage.
    """
    m = system.matrix
    d = determinant(m)
    if eps_singular is None:
        eps_singular = 1e-10 * max(1.0, float(np.abs(m).max()) ** 3)
    if abs(d) <= eps_singular:
        raise SingularSystemError(f"|det| = {abs(d):.3e} <= {eps_singular:.3e}; system is singular")
    out = []
    for k in range(3):
        mk = m.copy()
        mk[:, k] = system.rhs
        out.append(determinant(mk) / d)
    return out[0], out[1], out[2]
