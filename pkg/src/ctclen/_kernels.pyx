# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Semantics must stay identical to ``_kernels_py.py``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY, exp, log1p

cnp.import_array()

cdef enum:
    SEPARATOR = 0
    APPENDED = 1


def fill_table(const double[:, ::1] logp, const cnp.int64_t[::1] widths, Py_ssize_t blank,
               const cnp.int64_t[:, ::1] cand, Py_ssize_t alpha, Py_ssize_t n_buckets,
               bint merge, int weights_code):
    cdef Py_ssize_t S = logp.shape[0]
    cdef Py_ssize_t K = cand.shape[1]
    cdef Py_ssize_t nb = n_buckets + 1
    score_a = np.full((S, nb), -np.inf, dtype=np.float64)
    length_a = np.zeros((S, nb), dtype=np.int64)
    last_a = np.full((S, nb), -1, dtype=np.int64)
    prev_a = np.full((S, nb), -1, dtype=np.int64)
    cdef double[:, ::1] score = score_a
    cdef cnp.int64_t[:, ::1] length = length_a
    cdef cnp.int64_t[:, ::1] last = last_a
    cdef cnp.int64_t[:, ::1] prev = prev_a

    cdef Py_ssize_t s, l, j, w, tb, plen, plast, nlen
    cdef double src, c, v

    # slot 0 extends a virtual empty prefix at bucket 0
    if logp[0, blank] > -INFINITY:
        score[0, 0] = logp[0, blank]
        last[0, 0] = blank
    for j in range(K):
        w = cand[0, j]
        v = logp[0, w]
        if v == -INFINITY:
            continue
        if weights_code == APPENDED:
            nlen = widths[w] + 1
        elif weights_code == SEPARATOR:
            nlen = widths[w]
        else:
            nlen = 1
        tb = (nlen + alpha - 1) // alpha
        if tb >= nb:
            continue
        if v > score[0, tb]:
            score[0, tb] = v
            length[0, tb] = nlen
            last[0, tb] = w

    for s in range(1, S):
        for l in range(nb):
            src = score[s - 1, l]
            if src == -INFINITY:
                continue
            c = src + logp[s, blank]
            if c > score[s, l]:
                score[s, l] = c
                length[s, l] = length[s - 1, l]
                last[s, l] = blank
                prev[s, l] = l
            plast = last[s - 1, l]
            if merge and plast != blank:
                c = src + logp[s, plast]
                if c > score[s, l]:
                    score[s, l] = c
                    length[s, l] = length[s - 1, l]
                    last[s, l] = plast
                    prev[s, l] = l
        for l in range(nb):
            src = score[s - 1, l]
            if src == -INFINITY:
                continue
            plen = length[s - 1, l]
            plast = last[s - 1, l]
            for j in range(K):
                w = cand[s, j]
                if merge and w == plast:
                    continue
                v = logp[s, w]
                if v == -INFINITY:
                    continue
                if weights_code == SEPARATOR:
                    nlen = plen + widths[w] + (1 if plen > 0 else 0)
                elif weights_code == APPENDED:
                    nlen = plen + widths[w] + 1
                else:
                    nlen = plen + 1
                tb = (nlen + alpha - 1) // alpha
                if tb >= nb:
                    continue
                c = src + v
                if c > score[s, tb]:
                    score[s, tb] = c
                    length[s, tb] = nlen
                    last[s, tb] = w
                    prev[s, tb] = l

    return score_a, length_a, last_a, prev_a


cdef inline double _logaddexp(double a, double b) nogil:
    if a == -INFINITY:
        return b
    if b == -INFINITY:
        return a
    if a > b:
        return a + log1p(exp(b - a))
    return b + log1p(exp(a - b))


def ctc_forward(const double[:, ::1] logp, ext_obj, Py_ssize_t blank):
    cdef cnp.int64_t[::1] ext = np.ascontiguousarray(ext_obj, dtype=np.int64)
    cdef Py_ssize_t S = logp.shape[0]
    cdef Py_ssize_t n = ext.shape[0]
    cdef Py_ssize_t s, i
    cdef double a
    cur_a = np.full(n, -np.inf)
    new_a = np.full(n, -np.inf)
    cdef double[::1] cur = cur_a
    cdef double[::1] new = new_a
    cdef double[::1] tmp
    cur[0] = logp[0, ext[0]]
    if n > 1:
        cur[1] = logp[0, ext[1]]
    for s in range(1, S):
        for i in range(n):
            a = cur[i]
            if i >= 1:
                a = _logaddexp(a, cur[i - 1])
            if i >= 2 and ext[i] != blank and ext[i] != ext[i - 2]:
                a = _logaddexp(a, cur[i - 2])
            if a == -INFINITY:
                new[i] = -INFINITY
            else:
                new[i] = a + logp[s, ext[i]]
        tmp = cur
        cur = new
        new = tmp
    if n == 1:
        return cur[0]
    return _logaddexp(cur[n - 1], cur[n - 2])
