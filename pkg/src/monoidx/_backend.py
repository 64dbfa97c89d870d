"""Pick the compiled kernels when importable, else the numpy fallback.

Set ``MONOIDX_PURE_PYTHON=1`` before import to force the fallback.
"""
import os

from . import _fallback

if os.environ.get("MONOIDX_PURE_PYTHON") == "1":
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "compiled"
    except ImportError:  # extension not built
        _impl = _fallback
        BACKEND = "python"

UNDERFLOW_Z = _fallback.UNDERFLOW_Z

increment_sums = _impl.increment_sums
group_means = _impl.group_means
grouped_increment_sums = _impl.grouped_increment_sums
grouped_increment_sums_rows = _impl.grouped_increment_sums_rows
nw_smooth = _impl.nw_smooth
