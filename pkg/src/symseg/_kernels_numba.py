"""Numba-jitted kernel implementations (default backend).

Loop bodies perform the same floating-point operations in the same order as
the vectorized fallback in :mod:`symseg._kernels_numpy`, so both backends
produce bit-identical output.
"""

from __future__ import annotations

import numpy as np
from numba import njit

TAN_22_5 = 0.41421356237309503
TAN_67_5 = 2.414213562373095


@njit(cache=True)
def gaussian_separable(img: np.ndarray, taps: np.ndarray) -> np.ndarray:
    h, w = img.shape
    n = len(taps)
    r = (n - 1) // 2
    tmp = np.zeros((h, w), np.float64)
    for y in range(h):
        for x in range(w):
            acc = 0.0
            for k in range(n):
                yy = y + k - r
                if yy < 0:
                    yy = 0
                elif yy >= h:
                    yy = h - 1
                acc += taps[k] * img[yy, x]
            tmp[y, x] = acc
    out = np.zeros((h, w), np.float64)
    for y in range(h):
        for x in range(w):
            acc = 0.0
            for k in range(n):
                xx = x + k - r
                if xx < 0:
                    xx = 0
                elif xx >= w:
                    xx = w - 1
                acc += taps[k] * tmp[y, xx]
            out[y, x] = acc
    return out


@njit(cache=True)
def roberts_grad(img: np.ndarray):
    h, w = img.shape
    gx = np.empty((h, w), np.float64)
    gy = np.empty((h, w), np.float64)
    for y in range(h):
        yp = y + 1 if y + 1 < h else h - 1
        for x in range(w):
            xp = x + 1 if x + 1 < w else w - 1
            gx[y, x] = img[y, x] - img[yp, xp]
            gy[y, x] = img[y, xp] - img[yp, x]
    return gx, gy


@njit(cache=True)
def prewitt_grad(img: np.ndarray):
    h, w = img.shape
    gx = np.empty((h, w), np.float64)
    gy = np.empty((h, w), np.float64)
    for y in range(h):
        ym = y - 1 if y > 0 else 0
        yp = y + 1 if y + 1 < h else h - 1
        for x in range(w):
            xm = x - 1 if x > 0 else 0
            xp = x + 1 if x + 1 < w else w - 1
            pos = img[ym, xp] + img[y, xp] + img[yp, xp]
            neg = img[ym, xm] + img[y, xm] + img[yp, xm]
            gx[y, x] = pos - neg
            pos = img[yp, xm] + img[yp, x] + img[yp, xp]
            neg = img[ym, xm] + img[ym, x] + img[ym, xp]
            gy[y, x] = pos - neg
    return gx, gy


@njit(cache=True)
def sobel_grad(img: np.ndarray):
    h, w = img.shape
    gx = np.empty((h, w), np.float64)
    gy = np.empty((h, w), np.float64)
    for y in range(h):
        ym = y - 1 if y > 0 else 0
        yp = y + 1 if y + 1 < h else h - 1
        for x in range(w):
            xm = x - 1 if x > 0 else 0
            xp = x + 1 if x + 1 < w else w - 1
            pos = img[ym, xp] + 2.0 * img[y, xp] + img[yp, xp]
            neg = img[ym, xm] + 2.0 * img[y, xm] + img[yp, xm]
            gx[y, x] = pos - neg
            pos = img[yp, xm] + 2.0 * img[yp, x] + img[yp, xp]
            neg = img[ym, xm] + 2.0 * img[ym, x] + img[ym, xp]
            gy[y, x] = pos - neg
    return gx, gy


@njit(cache=True)
def nms(mag: np.ndarray, gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
    h, w = mag.shape
    out = np.zeros((h, w), np.float64)
    for y in range(h):
        for x in range(w):
            m = mag[y, x]
            ax = abs(gx[y, x])
            ay = abs(gy[y, x])
            if ay <= TAN_22_5 * ax:
                dx, dy = 1, 0
            elif ay >= TAN_67_5 * ax:
                dx, dy = 0, 1
            elif gx[y, x] * gy[y, x] >= 0.0:
                dx, dy = 1, 1
            else:
                dx, dy = 1, -1
            py, px = y - dy, x - dx
            prv = mag[py, px] if 0 <= py < h and 0 <= px < w else 0.0
            ny, nx = y + dy, x + dx
            nxt = mag[ny, nx] if 0 <= ny < h and 0 <= nx < w else 0.0
            if m > prv and m >= nxt:
                out[y, x] = m
    return out


@njit(cache=True)
def dilate3(mask: np.ndarray) -> np.ndarray:
    h, w = mask.shape
    out = np.zeros((h, w), np.bool_)
    for y in range(h):
        for x in range(w):
            v = False
            for dy in range(-1, 2):
                yy = y + dy
                if yy < 0 or yy >= h:
                    continue
                for dx in range(-1, 2):
                    xx = x + dx
                    if 0 <= xx < w and mask[yy, xx]:
                        v = True
            out[y, x] = v
    return out


@njit(cache=True)
def erode3(mask: np.ndarray) -> np.ndarray:
    h, w = mask.shape
    out = np.zeros((h, w), np.bool_)
    for y in range(h):
        for x in range(w):
            v = True
            for dy in range(-1, 2):
                yy = y + dy
                if yy < 0 or yy >= h:
                    continue
                for dx in range(-1, 2):
                    xx = x + dx
                    if 0 <= xx < w and not mask[yy, xx]:
                        v = False
            out[y, x] = v
    return out


@njit(cache=True)
def hysteresis(nmag: np.ndarray, low_abs: float, high_abs: float) -> np.ndarray:
    h, w = nmag.shape
    out = np.zeros((h, w), np.bool_)
    stack = np.empty((h * w, 2), np.int32)
    top = 0
    for y in range(h):
        for x in range(w):
            if nmag[y, x] >= high_abs:
                out[y, x] = True
                stack[top, 0] = y
                stack[top, 1] = x
                top += 1
    while top > 0:
        top -= 1
        y = stack[top, 0]
        x = stack[top, 1]
        for dy in range(-1, 2):
            yy = y + dy
            if yy < 0 or yy >= h:
                continue
            for dx in range(-1, 2):
                xx = x + dx
                if 0 <= xx < w and not out[yy, xx] and nmag[yy, xx] >= low_abs:
                    out[yy, xx] = True
                    stack[top, 0] = yy
                    stack[top, 1] = xx
                    top += 1
    return out


@njit(cache=True)
def homogenize(img: np.ndarray, mt: int, binw: int) -> np.ndarray:
    h, w = img.shape
    half = binw // 2
    out = np.empty((h, w), np.uint8)
    stack = np.empty((w + 2, 2), np.int32)
    for y in range(h):
        top = 0
        stack[top, 0] = 0
        stack[top, 1] = w - 1
        top += 1
        while top > 0:
            top -= 1
            first = stack[top, 0]
            last = stack[top, 1]
            mid = (first + last) // 2
            mv = int(img[y, mid])
            deviates = False
            if first < last:
                for p in range(first, last + 1):
                    d = int(img[y, p]) - mv
                    if d > mt or -d > mt:
                        deviates = True
                        break
            if deviates:
                stack[top, 0] = first
                stack[top, 1] = mid
                top += 1
                stack[top, 0] = mid + 1
                stack[top, 1] = last
                top += 1
            else:
                q = binw * (mv // binw) + half
                for p in range(first, last + 1):
                    out[y, p] = q
    return out


@njit(cache=True)
def label_regions(mask: np.ndarray, conn: int) -> np.ndarray:
    h, w = mask.shape
    out = np.zeros((h, w), np.int32)
    queue = np.empty((h * w, 2), np.int32)
    label = 0
    for sy in range(h):
        for sx in range(w):
            if not mask[sy, sx] or out[sy, sx] != 0:
                continue
            label += 1
            out[sy, sx] = label
            queue[0, 0] = sy
            queue[0, 1] = sx
            top = 1
            while top > 0:
                top -= 1
                y = queue[top, 0]
                x = queue[top, 1]
                for dy in range(-1, 2):
                    yy = y + dy
                    if yy < 0 or yy >= h:
                        continue
                    for dx in range(-1, 2):
                        if conn == 4 and dy != 0 and dx != 0:
                            continue
                        xx = x + dx
                        if 0 <= xx < w and mask[yy, xx] and out[yy, xx] == 0:
                            out[yy, xx] = label
                            queue[top, 0] = yy
                            queue[top, 1] = xx
                            top += 1
    return out


@njit(cache=True)
def reflect_match(edges: np.ndarray, snapped2x: np.ndarray, tol: int) -> np.ndarray:
    h, w = edges.shape
    out = np.zeros((h, w), np.bool_)
    for y in range(h):
        for x in range(w):
            if not edges[y, x]:
                continue
            rx = snapped2x[y] - x
            if rx < 0 or rx >= w:
                out[y, x] = True
                continue
            matched = False
            for dy in range(-tol, tol + 1):
                yy = y + dy
                if yy < 0 or yy >= h:
                    continue
                for dx in range(-tol, tol + 1):
                    xx = rx + dx
                    if 0 <= xx < w and edges[yy, xx]:
                        matched = True
                        break
                if matched:
                    break
            out[y, x] = not matched
    return out
