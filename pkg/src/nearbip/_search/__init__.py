"""Search-kernel selection.

The compiled kernel (Cython) is used when it was built and the instance
fits its limits (cycle attachment masks live in 64-bit words); the pure
kernel is the reference and fallback.  Set NEARBIP_PURE=1 to force the
pure kernel, e.g. for benchmarking.
"""

import os

from . import pure

try:  # pragma: no cover - depends on the build environment
    from . import _speedups as compiled
except ImportError:  # pragma: no cover
    compiled = None

KERNEL = "pure" if compiled is None or os.environ.get("NEARBIP_PURE") else "compiled"


def run_search(n, adj, color, order, se, on_c, attach, count_mode):
    if KERNEL == "compiled" and max(attach, default=0) < (1 << 63):
        return compiled.run_search(n, adj, color, order, se, on_c, attach, count_mode)
    return pure.run_search(n, adj, color, order, se, on_c, attach, count_mode)
