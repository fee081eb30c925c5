"""Pure-numpy fallback for the compiled kernels in ``_ckernels.pyx``."""
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=64)
def _upper_indices(d):
    return np.triu_indices(d, k=1)


def vectorize_outer_rows(z, normalize=True):
    """Vectorize ``|z_r><z_r|`` for every row ``z_r`` of ``z``."""
    z = np.ascontiguousarray(z, dtype=np.complex128)
    nrows, d = z.shape
    iu, ju = _upper_indices(d)
    out = np.empty((nrows, d * d), dtype=np.float64)
    diag = (z.real**2 + z.imag**2)
    out[:, :d] = diag
    upper = z[:, iu] * z[:, ju].conj()
    out[:, d::2] = upper.real
    out[:, d + 1::2] = upper.imag
    if normalize:
        nrm = diag.sum(axis=1)
        nrm[nrm == 0.0] = 1.0
        out /= nrm[:, None]
    return out


def vectorize_hermitian(m):
    """Vectorize one Hermitian matrix (no Hermiticity check here)."""
    m = np.asarray(m, dtype=np.complex128)
    d = m.shape[0]
    iu, ju = _upper_indices(d)
    out = np.empty(d * d, dtype=np.float64)
    out[:d] = np.diagonal(m).real
    upper = m[iu, ju]
    out[d::2] = upper.real
    out[d + 1::2] = upper.imag
    return out


