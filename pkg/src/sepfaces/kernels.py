"""Kernel dispatch: the compiled extension when importable, numpy otherwise.

Set ``SEPFACES_PURE_PYTHON=1`` to force the numpy fallback.
"""
import os

import numpy as np

if os.environ.get("SEPFACES_PURE_PYTHON"):
    from . import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        from . import _pykernels as _impl

        BACKEND = "python"


def vectorize_outer_rows(z, normalize=True):
    z = np.ascontiguousarray(np.atleast_2d(z), dtype=np.complex128)
    return _impl.vectorize_outer_rows(z, normalize)


def vectorize_hermitian(m):
    m = np.ascontiguousarray(m, dtype=np.complex128)
    return _impl.vectorize_hermitian(m)


