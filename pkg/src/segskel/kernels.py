"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module is used.  ``BACKEND`` names the active implementation.
"""

from __future__ import annotations

from . import _pykernels

try:
    from . import _kernels as _active
    BACKEND = "cython"
except ImportError:  # extension not built
    _active = _pykernels
    BACKEND = "python"

MODE_SKELETON = _pykernels.MODE_SKELETON
MODE_GABRIEL = _pykernels.MODE_GABRIEL


def get_backend(name: str | None = None):
    """Return the kernel module ``name`` ("cython" / "python"), or the active one."""
    if name is None:
        return _active
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown kernel backend {name!r}")


def find_witness_lattice(*args, backend: str | None = None, **kwargs):
    return get_backend(backend).find_witness_lattice(*args, **kwargs)


def nearest_labels(segs, xs, ys, backend: str | None = None):
    return get_backend(backend).nearest_labels(segs, xs, ys)
