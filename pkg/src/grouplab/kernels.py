"""Kernel backend selection.

The compiled extension is preferred; set GROUPLAB_PURE=1 to force the numpy
fallback (used by the benchmark and by CI to test both paths).
"""

import os

if os.environ.get("GROUPLAB_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND

close_under_product = _impl.close_under_product
product_set = _impl.product_set
conjugate_set = _impl.conjugate_set
normalizer_members = _impl.normalizer_members
centralizer_members = _impl.centralizer_members
is_closed_subset = _impl.is_closed_subset
