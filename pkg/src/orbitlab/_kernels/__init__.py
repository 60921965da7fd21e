"""Hot grid-scan kernels with backend selection at import time.

The compiled extension (Cython) is used when available; otherwise the
pure-Python reference implementation takes over with identical semantics.
Both are importable explicitly for the equivalence tests and the benchmark,
and ORBITLAB_KERNEL_BACKEND=python|compiled forces a choice.
"""

from __future__ import annotations

import os

from . import _grid_py


def available_backends() -> dict:
    """Name -> module for every importable backend."""
    out = {"python": _grid_py}
    try:
        from . import _grid  # compiled extension, absent on pure installs

        out["compiled"] = _grid
    except ImportError:
        pass
    return out


def _select():
    backends = available_backends()
    forced = os.environ.get("ORBITLAB_KERNEL_BACKEND")
    if forced:
        if forced not in backends:
            raise ImportError(
                f"ORBITLAB_KERNEL_BACKEND={forced!r} is not available; "
                f"choices: {sorted(backends)}"
            )
        return backends[forced]
    return backends.get("compiled", _grid_py)


_impl = _select()

BACKEND: str = _impl.BACKEND
nearest_distances = _impl.nearest_distances
spiral_min_scan = _impl.spiral_min_scan
