"""Pure-numpy kernel implementations (fallback backend).

Each function mirrors the numba version in :mod:`symseg._kernels_numba`
operation-for-operation: accumulations run in the same order, so results are
bit-identical between backends.
"""

from __future__ import annotations

import numpy as np

# tan(22.5 deg), tan(67.5 deg): sector boundaries for 4-direction NMS
TAN_22_5 = 0.41421356237309503
TAN_67_5 = 2.414213562373095


def _replicate_idx(n: int, shift: int) -> np.ndarray:
    return np.clip(np.arange(n) + shift, 0, n - 1)


def gaussian_separable(img: np.ndarray, taps: np.ndarray) -> np.ndarray:
    """Separable Gaussian blur, vertical pass then horizontal, replicate border."""
    h, w = img.shape
    r = (len(taps) - 1) // 2
    tmp = np.zeros((h, w), np.float64)
    for k in range(len(taps)):
        idx = _replicate_idx(h, k - r)
        tmp += taps[k] * img[idx, :]
    out = np.zeros((h, w), np.float64)
    for k in range(len(taps)):
        idx = _replicate_idx(w, k - r)
        out += taps[k] * tmp[:, idx]
    return out


def roberts_grad(img: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Roberts cross 2x2 diagonal differences, replicate border."""
    h, w = img.shape
    yp = _replicate_idx(h, 1)
    xp = _replicate_idx(w, 1)
    gx = img - img[np.ix_(yp, xp)]
    gy = img[:, xp] - img[yp, :]
    return gx, gy


def _shifts3(img: np.ndarray):
    h, w = img.shape
    ym = _replicate_idx(h, -1)
    yp = _replicate_idx(h, 1)
    xm = _replicate_idx(w, -1)
    xp = _replicate_idx(w, 1)
    s = {}
    for dy, yi in ((-1, ym), (0, slice(None)), (1, yp)):
        for dx, xi in ((-1, xm), (0, slice(None)), (1, xp)):
            if isinstance(yi, slice):
                s[dy, dx] = img[:, xi] if not isinstance(xi, slice) else img
            elif isinstance(xi, slice):
                s[dy, dx] = img[yi, :]
            else:
                s[dy, dx] = img[np.ix_(yi, xi)]
    return s


def prewitt_grad(img: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Prewitt 3x3 gradients, replicate border."""
    s = _shifts3(img)
    pos = s[-1, 1] + s[0, 1] + s[1, 1]
    neg = s[-1, -1] + s[0, -1] + s[1, -1]
    gx = pos - neg
    pos = s[1, -1] + s[1, 0] + s[1, 1]
    neg = s[-1, -1] + s[-1, 0] + s[-1, 1]
    gy = pos - neg
    return gx, gy


def sobel_grad(img: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sobel 3x3 gradients, replicate border."""
    s = _shifts3(img)
    pos = s[-1, 1] + 2.0 * s[0, 1] + s[1, 1]
    neg = s[-1, -1] + 2.0 * s[0, -1] + s[1, -1]
    gx = pos - neg
    pos = s[1, -1] + 2.0 * s[1, 0] + s[1, 1]
    neg = s[-1, -1] + 2.0 * s[-1, 0] + s[-1, 1]
    gy = pos - neg
    return gx, gy


def nms(mag: np.ndarray, gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
    """Non-maximum suppression along the gradient quantized to 4 directions.

    A pixel survives iff its magnitude is strictly greater than the neighbor
    at -d and at least the neighbor at +d, where d is the canonical sector
    offset. Out-of-bounds neighbors count as 0.
    """
    h, w = mag.shape
    ax = np.abs(gx)
    ay = np.abs(gy)
    horiz = ay <= TAN_22_5 * ax
    vert = ~horiz & (ay >= TAN_67_5 * ax)
    diag = ~horiz & ~vert
    d45 = diag & (gx * gy >= 0.0)
    d135 = diag & ~d45

    pad = np.zeros((h + 2, w + 2), np.float64)
    pad[1:-1, 1:-1] = mag

    def sh(dy: int, dx: int) -> np.ndarray:
        return pad[1 + dy : 1 + dy + h, 1 + dx : 1 + dx + w]

    nxt = np.where(horiz, sh(0, 1), np.where(vert, sh(1, 0), np.where(d45, sh(1, 1), sh(-1, 1))))
    prv = np.where(horiz, sh(0, -1), np.where(vert, sh(-1, 0), np.where(d45, sh(-1, -1), sh(1, -1))))
    keep = (mag > prv) & (mag >= nxt)
    return np.where(keep, mag, 0.0)


def dilate3(mask: np.ndarray) -> np.ndarray:
    """3x3 binary dilation; outside the image counts as empty."""
    h, w = mask.shape
    pad = np.zeros((h + 2, w + 2), bool)
    pad[1:-1, 1:-1] = mask
    out = np.zeros((h, w), bool)
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            out |= pad[1 + dy : 1 + dy + h, 1 + dx : 1 + dx + w]
    return out


def erode3(mask: np.ndarray) -> np.ndarray:
    """3x3 binary erosion; outside the image counts as full."""
    h, w = mask.shape
    pad = np.ones((h + 2, w + 2), bool)
    pad[1:-1, 1:-1] = mask
    out = np.ones((h, w), bool)
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            out &= pad[1 + dy : 1 + dy + h, 1 + dx : 1 + dx + w]
    return out


def hysteresis(nmag: np.ndarray, low_abs: float, high_abs: float) -> np.ndarray:
    """Double-threshold hysteresis: weak pixels survive iff 8-connected
    (transitively) to a strong pixel."""
    strong = nmag >= high_abs
    weak = nmag >= low_abs
    out = strong.copy()
    while True:
        grown = dilate3(out) & weak
        grown |= out
        if np.array_equal(grown, out):
            return out
        out = grown


def homogenize(img: np.ndarray, mt: int, binw: int) -> np.ndarray:
    """Row-wise stack homogenization.

    Each segment [first, last] reads its mid pixel (floor midpoint); if any
    pixel deviates from the mid by more than ``mt`` the segment splits in two,
    otherwise every pixel is overwritten with the quantized mid intensity.
    Segments are processed LIFO.
    """
    h, w = img.shape
    half = binw // 2
    out = np.empty_like(img)
    for y in range(h):
        row = img[y].astype(np.int64)
        dst = out[y]
        stack = [(0, w - 1)]
        while stack:
            first, last = stack.pop()
            mid = (first + last) // 2
            mv = row[mid]
            seg = row[first : last + 1]
            if first < last and (int(seg.max()) > mv + mt or int(seg.min()) < mv - mt):
                stack.append((first, mid))
                stack.append((mid + 1, last))
            else:
                dst[first : last + 1] = binw * (mv // binw) + half
    return out


def label_regions(mask: np.ndarray, conn: int) -> np.ndarray:
    """Connected-component labels (0 = background). Component numbering is
    arbitrary; callers canonicalize."""
    h, w = mask.shape
    sentinel = np.iinfo(np.int64).max
    lab = np.where(mask, np.arange(h * w, dtype=np.int64).reshape(h, w), sentinel)
    if conn == 8:
        offsets = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)]
    else:
        offsets = [(-1, 0), (0, -1), (0, 1), (1, 0)]
    while True:
        pad = np.full((h + 2, w + 2), sentinel, np.int64)
        pad[1:-1, 1:-1] = lab
        best = lab.copy()
        for dy, dx in offsets:
            np.minimum(best, pad[1 + dy : 1 + dy + h, 1 + dx : 1 + dx + w], out=best)
        best = np.where(mask, best, sentinel)
        if np.array_equal(best, lab):
            break
        lab = best
    out = np.zeros((h, w), np.int32)
    if mask.any():
        roots = np.unique(lab[mask])
        for i, r in enumerate(roots):
            out[lab == r] = i + 1
    return out


def reflect_match(edges: np.ndarray, snapped2x: np.ndarray, tol: int) -> np.ndarray:
    """Mark edge pixels with no edge within Chebyshev distance ``tol`` of
    their reflection as enhanced (True). Reflections landing out of bounds
    are always enhanced."""
    h, w = edges.shape
    ys, xs = np.nonzero(edges)
    rx = snapped2x[ys] - xs
    inb = (rx >= 0) & (rx < w)
    pad = np.zeros((h + 2 * tol, w + 2 * tol), bool)
    pad[tol : tol + h, tol : tol + w] = edges
    rxc = np.clip(rx, 0, w - 1)
    matched = np.zeros(len(ys), bool)
    for dy in range(-tol, tol + 1):
        for dx in range(-tol, tol + 1):
            matched |= pad[ys + dy + tol, rxc + dx + tol]
    enhanced = ~(inb & matched)
    out = np.zeros((h, w), bool)
    out[ys, xs] = enhanced
    return out
