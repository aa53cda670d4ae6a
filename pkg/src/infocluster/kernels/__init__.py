"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The numba path is used when numba imports and ``INFOCLUSTER_NO_JIT`` is unset
(or ``0``/``false``). Both paths take and return plain numpy arrays/ints.
"""
import os

from . import _numpy

_disabled = os.environ.get("INFOCLUSTER_NO_JIT", "").strip().lower() not in ("", "0", "false", "no")

_impl = _numpy
if not _disabled:
    try:
        from . import _jit as _impl  # noqa: F811
    except ImportError:  # numba missing
        _impl = _numpy

BACKEND = "numba" if _impl is not _numpy else "numpy"

subset_sum = _impl.subset_sum
subset_or = _impl.subset_or
rank_table = _impl.rank_table
sfm_scan = _impl.sfm_scan
rgs_table = _impl.rgs_table
partition_sums = _impl.partition_sums
block_masks = _impl.block_masks

__all__ = [
    "BACKEND",
    "block_masks",
    "partition_sums",
    "rank_table",
    "rgs_table",
    "sfm_scan",
    "subset_or",
    "subset_sum",
]
