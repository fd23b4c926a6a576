"""Kernel backend selection.

The hot inner loops (smoothing, gradients, non-maximum suppression,
hysteresis, row homogenization, labeling, reflection matching, morphology)
exist twice: numba ``@njit`` loops in :mod:`symseg._kernels_numba` and
vectorized numpy equivalents in :mod:`symseg._kernels_numpy`. The two are
written to perform the same floating-point operations in the same order, so
their outputs are bit-identical.

Set ``SYMSEG_NUMBA=0`` in the environment to force the pure-numpy fallback;
the fallback is also used automatically when numba is not importable.
"""

import os

__all__ = ["kernels", "BACKEND"]

if os.environ.get("SYMSEG_NUMBA", "1") == "0":
    from . import _kernels_numpy as kernels

    BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba as kernels

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - depends on environment
        from . import _kernels_numpy as kernels

        BACKEND = "numpy"
