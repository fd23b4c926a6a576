"""Binary PNM codec: PGM (P5), PPM (P6), and packed PBM (P4) masks.

Only maxval 255 is supported. Encoding is canonical and deterministic:
``P5\\n<w> <h>\\n255\\n`` followed by the row-major payload, so encoding is
bit-exact and files in canonical form round-trip byte-for-byte.
"""

from __future__ import annotations

import numpy as np

from .errors import PnmDecodeError
from .image import GrayImage, RgbImage

__all__ = ["decode_pnm", "encode_pnm", "decode_pbm", "encode_pbm"]


def _read_token(data: bytes, pos: int, what: str) -> tuple[bytes, int]:
    """Read the next whitespace-delimited token, skipping '#' comment lines."""
    n = len(data)
    while pos < n:
        c = data[pos : pos + 1]
        if c.isspace():
            pos += 1
        elif c == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            break
    if pos >= n:
        raise PnmDecodeError(f"truncated header: missing {what}")
    start = pos
    while pos < n and not data[pos : pos + 1].isspace():
        pos += 1
    return data[start:pos], pos


def _read_int(data: bytes, pos: int, what: str) -> tuple[int, int]:
    tok, pos = _read_token(data, pos, what)
    if not tok.isdigit():
        raise PnmDecodeError(f"invalid {what}: {tok!r}")
    return int(tok), pos


def decode_pnm(data: bytes) -> GrayImage | RgbImage:
    """Decode a binary P5 (gray) or P6 (RGB) file with maxval 255."""
    magic, pos = _read_token(data, 0, "magic")
    if magic not in (b"P5", b"P6"):
        raise PnmDecodeError(f"unsupported magic {magic!r}, expected P5 or P6")
    width, pos = _read_int(data, pos, "width")
    height, pos = _read_int(data, pos, "height")
    maxval, pos = _read_int(data, pos, "maxval")
    if width < 1 or height < 1:
        raise PnmDecodeError(f"invalid dimensions {width}x{height}")
    if maxval != 255:
        raise PnmDecodeError(f"unsupported maxval {maxval}, expected 255")
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise PnmDecodeError("missing whitespace after maxval")
    pos += 1
    channels = 1 if magic == b"P5" else 3
    need = width * height * channels
    payload = data[pos : pos + need]
    if len(payload) < need:
        raise PnmDecodeError(f"truncated payload: expected {need} bytes, got {len(payload)}")
    arr = np.frombuffer(payload, dtype=np.uint8)
    if channels == 1:
        return GrayImage(arr.reshape(height, width))
    return RgbImage(arr.reshape(height, width, 3))


def encode_pnm(image: GrayImage | RgbImage) -> bytes:
    """Encode to the canonical binary P5/P6 form."""
    if isinstance(image, GrayImage):
        magic = b"P5"
    elif isinstance(image, RgbImage):
        magic = b"P6"
    else:
        raise TypeError(f"expected GrayImage or RgbImage, got {type(image).__name__}")
    header = magic + b"\n%d %d\n255\n" % (image.width, image.height)
    return header + image.data.tobytes()


def encode_pbm(mask: np.ndarray) -> bytes:
    """Encode a boolean mask as packed binary PBM (P4); 1 bits mark set pixels."""
    mask = np.asarray(mask, dtype=bool)
    if mask.ndim != 2:
        raise TypeError(f"mask must be 2-D, got shape {mask.shape}")
    h, w = mask.shape
    packed = np.packbits(mask, axis=1)
    return b"P4\n%d %d\n" % (w, h) + packed.tobytes()


def decode_pbm(data: bytes) -> np.ndarray:
    """Decode a packed binary PBM (P4) file to a boolean mask."""
    magic, pos = _read_token(data, 0, "magic")
    if magic != b"P4":
        raise PnmDecodeError(f"unsupported magic {magic!r}, expected P4")
    width, pos = _read_int(data, pos, "width")
    height, pos = _read_int(data, pos, "height")
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise PnmDecodeError("missing whitespace after height")
    pos += 1
    row_bytes = (width + 7) // 8
    need = row_bytes * height
    payload = data[pos : pos + need]
    if len(payload) < need:
        raise PnmDecodeError(f"truncated payload: expected {need} bytes, got {len(payload)}")
    bits = np.unpackbits(np.frombuffer(payload, dtype=np.uint8).reshape(height, row_bytes), axis=1)
    return bits[:, :width].astype(bool)
