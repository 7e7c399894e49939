# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Gauss-Jordan elimination over F_p.

Entries are kept in uint64 and reduced lazily: a row update adds at most
(p-1)^2 per entry, so reduction is only needed when a value is read as a
pivot or multiplier, or when the accumulated headroom runs out.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, uint32_t, int64_t

cnp.import_array()


cdef inline uint64_t _inv_mod(uint64_t a, uint64_t p):
    cdef int64_t t = 0, newt = 1, q, tmp
    cdef int64_t r = <int64_t>p, newr = <int64_t>a
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += <int64_t>p
    return <uint64_t>t


def rref_inplace(cnp.uint64_t[:, ::1] M, uint64_t p, bint reduced=True):
    """Row-reduce ``M`` in place; return the pivot columns.

    On return the first ``len(pivots)`` rows hold the echelon form with unit
    pivots, fully reduced mod ``p``.  With ``reduced`` the entries above each
    pivot are cleared as well (reduced row echelon form).
    """
    cdef Py_ssize_t rows = M.shape[0], cols = M.shape[1]
    cdef Py_ssize_t r = 0, c, i, k, piv
    cdef uint64_t v, f, inv
    cdef uint64_t step = (p - 1) * (p - 1)
    cdef uint64_t headroom, budget
    cdef uint64_t *mrow
    cdef uint32_t *prow
    cdef cnp.ndarray[cnp.uint32_t, ndim=1] pbuf = np.zeros(max(cols, 1), dtype=np.uint32)
    prow = <uint32_t *> pbuf.data
    pivots = []

    if p < 2 or p >= (<uint64_t>1 << 31):
        raise ValueError("modulus must satisfy 2 <= p < 2**31")
    headroom = ((<uint64_t>1 << 63) - p) // (step if step > 0 else 1)
    budget = headroom

    for i in range(rows):
        for k in range(cols):
            M[i, k] = M[i, k] % p

    for c in range(cols):
        if r >= rows:
            break
        piv = -1
        for i in range(r, rows):
            v = M[i, c] % p
            M[i, c] = v
            if v != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(c, cols):
                v = M[r, k]
                M[r, k] = M[piv, k]
                M[piv, k] = v
        if budget == 0:
            for i in range(rows):
                for k in range(c, cols):
                    M[i, k] = M[i, k] % p
            budget = headroom
        budget -= 1
        inv = _inv_mod(M[r, c] % p, p)
        mrow = &M[r, 0]
        for k in range(c, cols):
            mrow[k] = ((mrow[k] % p) * inv) % p
            prow[k] = <uint32_t>mrow[k]
        for i in range(rows):
            if i == r or (i < r and not reduced):
                continue
            f = M[i, c] % p
            if f == 0:
                M[i, c] = 0
                continue
            f = p - f
            mrow = &M[i, 0]
            for k in range(c, cols):
                mrow[k] += f * <uint64_t>prow[k]
        pivots.append(c)
        r += 1

    for i in range(r):
        for k in range(cols):
            M[i, k] = M[i, k] % p
    return pivots
