# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Horner kernels for point sets and circle grids.

The coefficient loop is outermost so the inner loop over points carries no
dependency and vectorizes; complex arithmetic is spelled out on real and
imaginary parts to avoid the C99 complex-multiply recovery path.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport M_PI

cnp.import_array()


cdef void _horner_many(const double[::1] cr, const double[::1] ci, const double[::1] zr,
                       const double[::1] zi, double[::1] ar, double[::1] ai) noexcept nogil:
    cdef Py_ssize_t k, i, n = cr.shape[0], npts = zr.shape[0]
    cdef double t
    for i in range(npts):
        ar[i] = cr[n - 1]
        ai[i] = ci[n - 1]
    for k in range(n - 2, -1, -1):
        for i in range(npts):
            t = ar[i] * zr[i] - ai[i] * zi[i] + cr[k]
            ai[i] = ar[i] * zi[i] + ai[i] * zr[i] + ci[k]
            ar[i] = t


def _split(coeffs):
    c = np.asarray(coeffs, dtype=np.complex128)
    return np.ascontiguousarray(c.real), np.ascontiguousarray(c.imag)


def _run(coeffs, zr, zi):
    cr, ci = _split(coeffs)
    ar = np.empty_like(zr)
    ai = np.empty_like(zr)
    cdef const double[::1] crv = cr, civ = ci, zrv = zr, ziv = zi
    cdef double[::1] arv = ar, aiv = ai
    with nogil:
        _horner_many(crv, civ, zrv, ziv, arv, aiv)
    return ar + 1j * ai


def horner(coeffs, z):
    zarr = np.asarray(z, dtype=np.complex128)
    flat = zarr.reshape(-1)
    out = _run(coeffs, np.ascontiguousarray(flat.real), np.ascontiguousarray(flat.imag))
    return out.reshape(zarr.shape)


def circle_values(coeffs, radii, int n_theta):
    cdef cnp.ndarray r = np.ascontiguousarray(radii, dtype=np.float64)
    cdef Py_ssize_t j
    ang = np.empty(n_theta, dtype=np.float64)
    cdef double[::1] av = ang
    for j in range(n_theta):
        av[j] = 2.0 * M_PI * j / n_theta
    # same angle convention and rounding as the numpy fallback
    zr = np.ascontiguousarray((r[:, None] * np.cos(ang)[None, :]).reshape(-1))
    zi = np.ascontiguousarray((r[:, None] * np.sin(ang)[None, :]).reshape(-1))
    return _run(coeffs, zr, zi).reshape(r.shape[0], n_theta)
