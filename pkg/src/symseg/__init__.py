"""Asymmetry-based tumor-candidate detection for near-bilaterally-symmetric
grayscale brain images."""

__version__ = "0.1.0"

from .backend import BACKEND
from .errors import (
    DegenerateDataError,
    DimensionError,
    ParameterError,
    PipelineError,
    PnmDecodeError,
    SingularSystemError,
    SymsegError,
)
from .image import GrayImage, RgbImage, quantize_intensity, rgb_to_gray
from .pnm import decode_pbm, decode_pnm, encode_pbm, encode_pnm

__all__ = [
    "__version__",
    "BACKEND",
    "GrayImage",
    "RgbImage",
    "quantize_intensity",
    "rgb_to_gray",
    "decode_pnm",
    "encode_pnm",
    "decode_pbm",
    "encode_pbm",
    "SymsegError",
    "PnmDecodeError",
    "ParameterError",
    "DimensionError",
    "DegenerateDataError",
    "SingularSystemError",
    "PipelineError",
]
