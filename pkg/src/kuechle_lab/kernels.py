"""Backend selection for the F_p hot loops.

The compiled extension ``_kernels`` is used when it was built; otherwise
the pure-Python module with identical behaviour is used.  Both take
``int64`` numpy arrays of residues.
"""

from contextlib import contextmanager

import numpy as np

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    _BACKENDS["compiled"] = _compiled

_active = _BACKENDS.get("compiled", _kernels_py)


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def backend_name() -> str:
    return "compiled" if _active is _compiled else "python"


@contextmanager
def use_backend(name: str):
    """Temporarily switch the kernel backend (tests and benchmarks)."""
    global _active
    if name not in _BACKENDS:
        raise KeyError(f"backend {name!r} not available; have {available_backends()}")
    prev = _active
    _active = _BACKENDS[name]
    try:
        yield
    finally:
        _active = prev


def _arr(x, ndim):
    a = np.ascontiguousarray(x, dtype=np.int64)
    if a.ndim != ndim:
        raise ValueError(f"expected a {ndim}-d array, got shape {a.shape}")
    return a


def bilinear_isotropic_mask(bases, forms, p: int) -> np.ndarray:
    """Boolean mask over bases (N, k, m): rows pairwise orthogonal for all forms (F, m, m)."""
    return _active.bilinear_isotropic_mask(_arr(bases, 3), _arr(forms, 3), int(p)).astype(bool)


def quadratic_isotropic_mask(bases, qmat, p: int) -> np.ndarray:
    """Boolean mask: the quadratic form with upper-triangle coefficients qmat vanishes on the span."""
    return _active.quadratic_isotropic_mask(_arr(bases, 3), _arr(qmat, 2), int(p)).astype(bool)


def scalar_product_fibers(mats, p: int) -> np.ndarray:
    """Per 3x3 matrix (N, 3, 3), how many matrices in the list give a scalar product with it."""
    return _active.scalar_product_fibers(_arr(mats, 3), int(p))
