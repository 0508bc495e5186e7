"""Backend selection for the enumeration kernels.

The compiled module ``_kernels_c`` is used when it imports; otherwise the
NumPy versions in ``_kernels_py`` are used. Setting ``HYPERCODE_PURE_PYTHON``
to a non-empty value forces the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("HYPERCODE_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels_c as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

weight_census = _impl.weight_census
nearest_scan = _impl.nearest_scan
nearest_table = _impl.nearest_table
activity_census = _impl.activity_census


def available_backends() -> dict:
    out = {"python": _kernels_py}
    try:
        from . import _kernels_c  # type: ignore[attr-defined]

        out["cython"] = _kernels_c
    except ImportError:
        pass
    return out
