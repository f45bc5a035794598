"""Kernel selection.

The compiled extension is used when it imports; setting
``MATROID_UNION_PURE=1`` forces the pure-Python fallback.
"""
import os

from . import _purekernels as pure

if os.environ.get("MATROID_UNION_PURE", "") not in ("", "0"):
    _impl = pure
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = pure

BACKEND = "compiled" if _impl is not pure else "python"

BAD_ID = -1
count_valid = _impl.count_valid
forest_rank = _impl.forest_rank
gf2_rank = _impl.gf2_rank
partition_rank = _impl.partition_rank

__all__ = ["BACKEND", "BAD_ID", "count_valid", "forest_rank", "gf2_rank", "partition_rank", "pure"]
