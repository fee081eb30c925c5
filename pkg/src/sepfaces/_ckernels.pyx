"""Compiled kernels for the Hermitian -> real vectorization hot loop.

Layout matches :mod:`sepfaces._pykernels`: the ``d`` real diagonal entries
first, then ``(Re, Im)`` pairs of the strictly upper entries in row-major
order.
"""
import numpy as np




def vectorize_outer_rows(double complex[:, ::1] z, bint normalize=True):
    """Vectorize ``|z_r><z_r|`` for every row ``z_r`` of ``z``."""
    cdef Py_ssize_t nrows = z.shape[0]
    cdef Py_ssize_t d = z.shape[1]
    out = np.empty((nrows, d * d), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t r, j, k, pos
    cdef double scale, nrm, zjr, zji, zkr, zki

    for r in range(nrows):
        scale = 1.0
        if normalize:
            nrm = 0.0
            for j in range(d):
                nrm += z[r, j].real * z[r, j].real + z[r, j].imag * z[r, j].imag
            if nrm > 0.0:
                scale = 1.0 / nrm
        for j in range(d):
            zjr = z[r, j].real
            zji = z[r, j].imag
            o[r, j] = (zjr * zjr + zji * zji) * scale
        pos = d
        for j in range(d):
            zjr = z[r, j].real
            zji = z[r, j].imag
            for k in range(j + 1, d):
                zkr = z[r, k].real
                zki = z[r, k].imag
                # z_j * conj(z_k)
                o[r, pos] = (zjr * zkr + zji * zki) * scale
                o[r, pos + 1] = (zji * zkr - zjr * zki) * scale
                pos += 2
    return out


def vectorize_hermitian(double complex[:, ::1] m):
    """Vectorize one Hermitian matrix (no Hermiticity check here)."""
    cdef Py_ssize_t d = m.shape[0]
    out = np.empty(d * d, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t j, k, pos
    for j in range(d):
        o[j] = m[j, j].real
    pos = d
    for j in range(d):
        for k in range(j + 1, d):
            o[pos] = m[j, k].real
            o[pos + 1] = m[j, k].imag
            pos += 2
    return out


