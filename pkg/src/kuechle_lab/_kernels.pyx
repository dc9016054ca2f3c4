# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops over F_p.  Mirrors :mod:`kuechle_lab._kernels_py`."""

import numpy as np

from libc.stdint cimport int64_t


def bilinear_isotropic_mask(const int64_t[:, :, ::1] bases,
                            const int64_t[:, :, ::1] forms,
                            int64_t p):
    cdef Py_ssize_t n = bases.shape[0], k = bases.shape[1], m = bases.shape[2]
    cdef Py_ssize_t nf = forms.shape[0]
    cdef Py_ssize_t b, f, i, j, a, c
    cdef int64_t acc, s
    cdef bint ok
    out = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] res = out
    cdef int64_t[::1] w = np.zeros(m, dtype=np.int64)
    for b in range(n):
        ok = True
        for f in range(nf):
            if not ok:
                break
            for j in range(k):
                if not ok:
                    break
                # w = F u_j
                for a in range(m):
                    s = 0
                    for c in range(m):
                        s += forms[f, a, c] * bases[b, j, c]
                    w[a] = s % p
                for i in range(k):
                    acc = 0
                    for a in range(m):
                        acc += bases[b, i, a] * w[a]
                    if acc % p != 0:
                        ok = False
                        break
        res[b] = ok
    return out


def quadratic_isotropic_mask(const int64_t[:, :, ::1] bases,
                             const int64_t[:, ::1] qmat,
                             int64_t p):
    cdef Py_ssize_t n = bases.shape[0], k = bases.shape[1], m = bases.shape[2]
    cdef Py_ssize_t b, i, j, a, c
    cdef int64_t acc, s
    cdef bint ok
    out = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] res = out
    cdef int64_t[:, ::1] upper = np.zeros((m, m), dtype=np.int64)
    cdef int64_t[:, ::1] polar = np.zeros((m, m), dtype=np.int64)
    cdef int64_t[::1] w = np.zeros(m, dtype=np.int64)
    for a in range(m):
        for c in range(a, m):
            upper[a, c] = qmat[a, c]
    for a in range(m):
        for c in range(m):
            polar[a, c] = upper[a, c] + upper[c, a]
    for b in range(n):
        ok = True
        for j in range(k):
            if not ok:
                break
            for a in range(m):
                s = 0
                for c in range(m):
                    s += upper[a, c] * bases[b, j, c]
                w[a] = s % p
            acc = 0
            for a in range(m):
                acc += bases[b, j, a] * w[a]
            if acc % p != 0:
                ok = False
                break
            for a in range(m):
                s = 0
                for c in range(m):
                    s += polar[a, c] * bases[b, j, c]
                w[a] = s % p
            for i in range(j):
                acc = 0
                for a in range(m):
                    acc += bases[b, i, a] * w[a]
                if acc % p != 0:
                    ok = False
                    break
        res[b] = ok
    return out


def scalar_product_fibers(const int64_t[:, :, ::1] mats, int64_t p):
    cdef Py_ssize_t n = mats.shape[0]
    cdef Py_ssize_t i, j, r, c, t
    cdef int64_t s, diag
    cdef bint ok
    out = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] res = out
    for i in range(n):
        for j in range(n):
            ok = True
            diag = 0
            for r in range(3):
                if not ok:
                    break
                for c in range(3):
                    s = 0
                    for t in range(3):
                        s += mats[i, r, t] * mats[j, t, c]
                    s = s % p
                    if r == c:
                        if r == 0:
                            diag = s
                        elif s != diag:
                            ok = False
                            break
                    elif s != 0:
                        ok = False
                        break
            if ok:
                res[i] += 1
    return out
