"""Backend selection for the hot kernels.

The compiled extension (`roughcone._speedups`, Cython) is preferred when
importable; the pure-numpy module `roughcone._kernels_py` is the
fallback.  Set ``ROUGHCONE_PURE=1`` in the environment to force the
fallback (used by the benchmark and the backend-parity tests).

Both backends implement identical semantics, including floating-point
accumulation order, so verdicts and reports do not depend on which one
is active.
"""

import os

import numpy as np

from . import _kernels_py

EUCLIDEAN = _kernels_py.EUCLIDEAN
SUP = _kernels_py.SUP
DISCRETE = _kernels_py.DISCRETE

_FORCE_PURE = os.environ.get("ROUGHCONE_PURE", "").lower() in ("1", "true", "yes")

if _FORCE_PURE:
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"


def available_backends():
    """Names of the importable backends ("python" always; "compiled" if built)."""
    names = ["python"]
    try:
        from . import _speedups  # noqa: F401

        names.append("compiled")
    except ImportError:
        pass
    return names


def get_backend(name):
    """Return the backend module for `name` ("python" or "compiled")."""
    if name == "python":
        return _kernels_py
    if name == "compiled":
        from . import _speedups

        return _speedups
    raise ValueError("unknown backend %r" % (name,))


def set_backend(name):
    """Switch the active backend (benchmarking and tests only).

    Verdicts do not depend on the backend, so this is safe but should
    not be needed in library code.  Returns the previous backend name.
    """
    global _impl, BACKEND
    previous = BACKEND
    _impl = get_backend(name)
    BACKEND = name
    return previous


def _c2d(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def pairwise_distance(pts, kind, impl=None):
    """All-pairs distances between rows of `pts` ((N, q) -> (N, N))."""
    impl = impl or _impl
    pts = _c2d(pts)
    if pts.ndim != 2:
        raise ValueError("pts must be 2-D")
    return impl.pairwise_distance(pts, int(kind))


def facet_crit(gaps, scale, delta, impl=None):
    """Per-row critical scalar max_r (delta - gaps[., r]) / scale[r]."""
    impl = impl or _impl
    gaps = _c2d(gaps)
    scale = _c2d(scale)
    return impl.facet_crit(gaps, scale, float(delta))


def soc_crit(base, witness, delta, impl=None):
    """Per-row critical scalar for second-order cone interior clearance."""
    impl = impl or _impl
    base = _c2d(base)
    witness = _c2d(witness)
    return impl.soc_crit(base, witness, float(delta))


def affine_row_max(rho, coef0, coef1, impl=None):
    """Elementwise max_r(coef0[r] + rho * coef1[r]); `rho` any shape."""
    impl = impl or _impl
    rho = _c2d(rho)
    shape = rho.shape
    flat = rho.reshape(1, -1) if rho.ndim != 2 else rho
    out = impl.affine_row_max(_c2d(flat), _c2d(coef0), _c2d(coef1))
    return out.reshape(shape)


def pair_min_index_max(T, impl=None):
    """M[k] = max over pairs (i, j) with min(i, j) = k of T[i, j]."""
    impl = impl or _impl
    T = _c2d(T)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ValueError("T must be square")
    return impl.pair_min_index_max(T)
