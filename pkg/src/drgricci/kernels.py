"""Backend selection for the hot kernels.

The compiled extension ``drgricci._kernels`` is used when it imports; otherwise
the NumPy/pure-Python versions in ``drgricci._pykernels`` take over. Setting
``DRGRICCI_PURE=1`` forces the fallback.
"""

import os

from . import _pykernels as python_backend

compiled_backend = None
if os.environ.get("DRGRICCI_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "compiled" if compiled_backend is not None else "python"

# the compiled transport works on int64; larger instances go to the Python solver
INT64_SAFE = 2**62

bfs_distances = active.bfs_distances
all_pairs_distances = active.all_pairs_distances
shell_counts = active.shell_counts
perfect_matching = active.perfect_matching


def transport(supply, demand, cost):
    total = sum(supply)
    worst = max((max(row) for row in cost), default=0)
    if compiled_backend is not None and total * (worst + 1) * 4 < INT64_SAFE:
        return compiled_backend.transport(supply, demand, cost)
    return python_backend.transport(supply, demand, cost)
