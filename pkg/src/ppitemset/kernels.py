"""Backend selection for the support-counting kernels.

The compiled extension is used when it was built; otherwise, or when
``PPITEMSET_PURE_PYTHON`` is set to a non-empty value, the numpy fallback
is loaded. Both expose ``build_bitmaps`` and ``count_supports``.
"""

import os

if os.environ.get("PPITEMSET_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
build_bitmaps = _impl.build_bitmaps
count_supports = _impl.count_supports
