# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled coefficient-list kernels; same contract as ``_kernels_py``.

Coefficients are arbitrary-precision Python ints.  ``mul`` drops to a
``long long`` convolution when a bound on every output coefficient fits in
63 bits, otherwise it convolves Python objects.
"""

from libc.stdlib cimport malloc, calloc, free

cdef long long _LIMIT = (1 << 62)


cdef list _trim(list c):
    cdef Py_ssize_t n = len(c)
    while n and not c[n - 1]:
        n -= 1
    del c[n:]
    return c


def add(a, b):
    cdef Py_ssize_t j, nb
    if len(a) < len(b):
        a, b = b, a
    cdef list out = list(a)
    cdef list bl = list(b)
    nb = len(bl)
    for j in range(nb):
        out[j] = out[j] + bl[j]
    return _trim(out)


def sub(a, b):
    cdef Py_ssize_t j, nb
    cdef list out = list(a)
    cdef list bl = list(b)
    nb = len(bl)
    if len(out) < nb:
        out.extend([0] * (nb - len(out)))
    for j in range(nb):
        out[j] = out[j] - bl[j]
    return _trim(out)


def shift_add(a, b, Py_ssize_t m):
    cdef Py_ssize_t j, nb, n
    cdef list bl = list(b)
    nb = len(bl)
    cdef list out = list(a)
    if not nb:
        return out
    n = max(len(out), nb + m)
    out.extend([0] * (n - len(out)))
    for j in range(nb):
        out[j + m] = out[j + m] + bl[j]
    return _trim(out)


cdef object _maxabs(list c):
    cdef object best = 0
    cdef object x
    for x in c:
        if x < 0:
            x = -x
        if x > best:
            best = x
    return best


cdef list _mul_ll(list a, list b):
    cdef Py_ssize_t na = len(a), nb = len(b), nout = na + nb - 1
    cdef Py_ssize_t i, j
    cdef long long y
    cdef long long *pa = <long long *> malloc(na * sizeof(long long))
    cdef long long *pb = <long long *> malloc(nb * sizeof(long long))
    cdef long long *po = <long long *> calloc(nout, sizeof(long long))
    if pa == NULL or pb == NULL or po == NULL:
        free(pa); free(pb); free(po)
        raise MemoryError()
    try:
        for i in range(na):
            pa[i] = a[i]
        for j in range(nb):
            pb[j] = b[j]
        for j in range(nb):
            y = pb[j]
            if y:
                for i in range(na):
                    po[i + j] += pa[i] * y
        return [po[i] for i in range(nout)]
    finally:
        free(pa); free(pb); free(po)


def mul(a, b):
    cdef list al = list(a)
    cdef list bl = list(b)
    cdef Py_ssize_t i, j, na, nb
    cdef object x, y, ma, mb
    if not al or not bl:
        return []
    if len(al) < len(bl):
        al, bl = bl, al
    na = len(al)
    nb = len(bl)
    ma = _maxabs(al)
    mb = _maxabs(bl)
    if ma < _LIMIT and mb < _LIMIT and ma * mb * nb < _LIMIT:
        return _trim(_mul_ll(al, bl))
    cdef list out = [0] * (na + nb - 1)
    for j in range(nb):
        y = bl[j]
        if y:
            for i in range(na):
                out[i + j] = out[i + j] + al[i] * y
    return _trim(out)


def divmod_exact(p, d):
    cdef list r = list(p)
    cdef list dl = list(d)
    cdef Py_ssize_t ld, s, j
    cdef object c, t, rem, lead
    if not dl:
        raise ZeroDivisionError("polynomial division by zero")
    ld = len(dl) - 1
    lead = dl[ld]
    if len(r) <= ld:
        return [], _trim(r)
    cdef list quot = [0] * (len(r) - ld)
    for s in range(len(r) - 1 - ld, -1, -1):
        c = r[s + ld]
        if not c:
            continue
        t, rem = divmod(c, lead)
        if rem:
            return _trim(quot), _trim(r)
        quot[s] = t
        for j in range(ld + 1):
            r[s + j] = r[s + j] - t * dl[j]
    return _trim(quot), _trim(r)
