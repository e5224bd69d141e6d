"""Kernel selection: compiled extension when built, pure Python otherwise.

Set QSTAR_FORCE_PURE=1 to skip the compiled module (used by the parity tests
and the benchmark harness).
"""

import os

if os.environ.get("QSTAR_FORCE_PURE") == "1":
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels

convolve = kernels.convolve
search_sextic = kernels.search_sextic
perfect_square_root = kernels.perfect_square_root
COMPILED = bool(getattr(kernels, "COMPILED", False))

__all__ = ["convolve", "search_sextic", "perfect_square_root", "COMPILED"]
