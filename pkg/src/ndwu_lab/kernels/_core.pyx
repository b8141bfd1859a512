# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled batch kernels over flat-16 behavior tables.

Semantics must match kernels._py exactly; the test suite cross-checks the
two backends against the scalar reference implementation.
"""

import numpy as np

from libc.math cimport sqrt


BACKEND = "compiled"


cdef inline Py_ssize_t _idx(Py_ssize_t nu, Py_ssize_t mu, Py_ssize_t a, Py_ssize_t b) nogil:
    return ((nu * 2 + mu) * 2 + a) * 2 + b


cdef inline double _clip1(double x) nogil:
    if x > 1.0:
        return 1.0
    if x < -1.0:
        return -1.0
    return x


def chsh_batch(tables):
    """CHSH value per row of an (N, 16) table batch."""
    arr = np.ascontiguousarray(np.asarray(tables, dtype=np.float64).reshape(-1, 16))
    cdef double[:, ::1] t = arr
    cdef Py_ssize_t n = t.shape[0], i, nu, mu, a, b
    out = np.empty(n)
    cdef double[::1] o = out
    cdef double s, sign
    with nogil:
        for i in range(n):
            s = 0.0
            for nu in range(2):
                for mu in range(2):
                    for a in range(2):
                        for b in range(2):
                            sign = 1.0 if (a + b + nu * mu) % 2 == 0 else -1.0
                            s += sign * t[i, _idx(nu, mu, a, b)]
            o[i] = s
    return out


cdef void _side(const double* meas, const double* cond, const double* corr,
                bint transpose, double tol, double* res) nogil:
    # res: max_lhs, min_rhs, skipped
    cdef double mx = -2.0, mn = 2.0, skipped = 0.0
    cdef Py_ssize_t setting, outcome
    cdef double sign, w, e0, e1, r, c0, c1
    for setting in range(2):
        for outcome in range(2):
            sign = 1.0 if outcome == 0 else -1.0
            w = (1.0 + sign * cond[setting]) / 2.0
            if w <= tol:
                skipped += 1.0
                continue
            if transpose:
                c0 = corr[setting * 2 + 0]
                c1 = corr[setting * 2 + 1]
            else:
                c0 = corr[0 * 2 + setting]
                c1 = corr[1 * 2 + setting]
            e0 = _clip1((meas[0] + sign * c0) / (2.0 * w))
            e1 = _clip1((meas[1] + sign * c1) / (2.0 * w))
            r = sqrt((1.0 - e0 * e0) * (1.0 - e1 * e1))
            if e0 * e1 - r > mx:
                mx = e0 * e1 - r
            if e0 * e1 + r < mn:
                mn = e0 * e1 + r
    res[0] = mx
    res[1] = mn
    res[2] = skipped


def criterion_batch(tables, double tol=1e-9):
    """Correlation-criterion summary per row; columns as in kernels._py."""
    arr = np.ascontiguousarray(np.asarray(tables, dtype=np.float64).reshape(-1, 16))
    cdef double[:, ::1] t = arr
    cdef Py_ssize_t n = t.shape[0], i, nu, mu, a, b
    out = np.empty((n, 7))
    cdef double[:, ::1] o = out
    cdef double amarg[2]
    cdef double bmarg[2]
    cdef double corr[4]
    cdef double res[3]
    cdef double pa, pb, sa, sb
    with nogil:
        for i in range(n):
            for nu in range(2):
                sa = 0.0
                for mu in range(2):
                    for a in range(2):
                        for b in range(2):
                            sa += (1.0 if a == 0 else -1.0) * t[i, _idx(nu, mu, a, b)]
                amarg[nu] = 0.5 * sa
            for mu in range(2):
                sb = 0.0
                for nu in range(2):
                    for a in range(2):
                        for b in range(2):
                            sb += (1.0 if b == 0 else -1.0) * t[i, _idx(nu, mu, a, b)]
                bmarg[mu] = 0.5 * sb
            for nu in range(2):
                for mu in range(2):
                    sa = 0.0
                    for a in range(2):
                        for b in range(2):
                            sa += (1.0 if (a + b) % 2 == 0 else -1.0) * t[i, _idx(nu, mu, a, b)]
                    corr[nu * 2 + mu] = sa
            _side(amarg, bmarg, corr, 0, tol, res)
            o[i, 0] = res[0]
            o[i, 1] = res[1]
            o[i, 2] = res[2]
            _side(bmarg, amarg, corr, 1, tol, res)
            o[i, 3] = res[0]
            o[i, 4] = res[1]
            o[i, 5] = res[2]
            o[i, 6] = 1.0 if (o[i, 0] <= o[i, 1] + tol and o[i, 3] <= o[i, 4] + tol) else 0.0
    return out
