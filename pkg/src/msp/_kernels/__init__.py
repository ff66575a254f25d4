"""Hot numeric kernels with a compiled core and a pure-Python fallback.

The compiled extension (``msp._kernels._fast``, Cython) is selected at
import time when available; otherwise the pure-Python twin is used.
Set ``MSP_PURE_PYTHON=1`` to force the fallback, e.g. for benchmarking
or debugging. Both backends implement the same signatures and must be
bit-identical in results (see tests/test_kernels.py).
"""

import os

from . import _pure

if os.environ.get("MSP_PURE_PYTHON"):
    _impl = _pure
else:
    try:
        from . import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

BACKEND = "pure" if _impl is _pure else "compiled"

OK = _pure.OK
LATE_ARRIVAL = _pure.LATE_ARRIVAL
PAST_HORIZON = _pure.PAST_HORIZON

eval_route = _impl.eval_route
eval_tail_swap = _impl.eval_tail_swap


def backends():
    """Return the available kernel backends keyed by name."""
    out = {"pure": _pure}
    try:
        from . import _fast
        out["compiled"] = _fast
    except ImportError:
        pass
    return out
