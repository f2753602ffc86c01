# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer polynomial kernels.

Same contract as ``qaffine._pypoly``.  Coefficients are processed as 64-bit
integers with overflow detection; any coefficient that does not fit, or any
intermediate overflow, reroutes the call to the pure-Python implementation,
so results are always exact.
"""
from libc.stdlib cimport malloc, calloc, free

from qaffine import _pypoly as _py

cdef extern from *:
    """
    static inline int qa_mul_ovf(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static inline int qa_add_ovf(long long a, long long b, long long *r) { return __builtin_add_overflow(a, b, r); }
    static inline int qa_sub_ovf(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    """
    int qa_mul_ovf(long long a, long long b, long long *r) nogil
    int qa_add_ovf(long long a, long long b, long long *r) nogil
    int qa_sub_ovf(long long a, long long b, long long *r) nogil

ZERO = ()
ONE = (1,)

trim = _py.trim
pneg = _py.pneg
pscale = _py.pscale
pshift = _py.pshift
pcontent = _py.pcontent
pprimitive = _py.pprimitive
pprem = _py.pprem


cdef int _load(object a, long long *buf) except -1:
    """Copy a into buf; return 1 when a coefficient does not fit in 64 bits."""
    cdef Py_ssize_t i, n = len(a)
    try:
        for i in range(n):
            buf[i] = a[i]
    except OverflowError:
        return 1
    return 0


cdef tuple _store(long long *buf, Py_ssize_t n):
    while n > 0 and buf[n - 1] == 0:
        n -= 1
    return tuple([buf[i] for i in range(n)])


cdef long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


def padd(a, b):
    cdef Py_ssize_t na = len(a), nb = len(b), n, i
    if na < nb:
        a, b = b, a
        na, nb = nb, na
    if nb == 0:
        return tuple(a)
    n = na
    cdef long long *A = <long long *> malloc(na * sizeof(long long))
    cdef long long *B = <long long *> malloc(nb * sizeof(long long))
    try:
        if _load(a, A) or _load(b, B):
            return _py.padd(a, b)
        for i in range(nb):
            if qa_add_ovf(A[i], B[i], &A[i]):
                return _py.padd(a, b)
        return _store(A, n)
    finally:
        free(A)
        free(B)


def psub(a, b):
    cdef Py_ssize_t na = len(a), nb = len(b), n, i
    n = na if na > nb else nb
    if n == 0:
        return ()
    cdef long long *A = <long long *> calloc(n, sizeof(long long))
    cdef long long *B = <long long *> calloc(n, sizeof(long long))
    try:
        if _load(a, A) or _load(b, B):
            return _py.psub(a, b)
        for i in range(n):
            if qa_sub_ovf(A[i], B[i], &A[i]):
                return _py.psub(a, b)
        return _store(A, n)
    finally:
        free(A)
        free(B)


def pmul(a, b):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    cdef long long t
    if na == 0 or nb == 0:
        return ()
    cdef long long *A = <long long *> malloc(na * sizeof(long long))
    cdef long long *B = <long long *> malloc(nb * sizeof(long long))
    cdef long long *C = <long long *> calloc(na + nb - 1, sizeof(long long))
    try:
        if _load(a, A) or _load(b, B):
            return _py.pmul(a, b)
        for i in range(na):
            if A[i] == 0:
                continue
            for j in range(nb):
                if qa_mul_ovf(A[i], B[j], &t) or qa_add_ovf(C[i + j], t, &C[i + j]):
                    return _py.pmul(a, b)
        return _store(C, na + nb - 1)
    finally:
        free(A)
        free(B)
        free(C)


def pdivexact(a, b):
    cdef Py_ssize_t na = len(a), nb = len(b), k, j
    cdef long long lb, c, qk, t
    if nb == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if na == 0:
        return ()
    if na < nb:
        raise ArithmeticError("inexact polynomial division")
    cdef long long *R = <long long *> malloc(na * sizeof(long long))
    cdef long long *B = <long long *> malloc(nb * sizeof(long long))
    cdef long long *Q = <long long *> calloc(na - nb + 1, sizeof(long long))
    try:
        if _load(a, R) or _load(b, B):
            return _py.pdivexact(a, b)
        lb = B[nb - 1]
        for k in range(na - nb, -1, -1):
            c = R[k + nb - 1]
            if c == 0:
                continue
            if c % lb != 0:
                raise ArithmeticError("inexact polynomial division")
            qk = c // lb
            Q[k] = qk
            for j in range(nb):
                if qa_mul_ovf(qk, B[j], &t) or qa_sub_ovf(R[k + j], t, &R[k + j]):
                    return _py.pdivexact(a, b)
        for k in range(na):
            if R[k] != 0:
                raise ArithmeticError("inexact polynomial division")
        return _store(Q, na - nb + 1)
    finally:
        free(R)
        free(B)
        free(Q)


cdef long long _content(long long *a, Py_ssize_t n) nogil:
    cdef long long g = 0
    cdef Py_ssize_t i
    for i in range(n):
        g = _gcd(g, a[i])
        if g == 1:
            break
    return g


cdef void _make_primitive(long long *a, Py_ssize_t n) nogil:
    cdef long long g = _content(a, n)
    cdef Py_ssize_t i
    if n and a[n - 1] < 0:
        g = -g
    if g == 1 or g == 0:
        return
    for i in range(n):
        a[i] = a[i] // g


cdef Py_ssize_t _prem(long long *r, Py_ssize_t nr, long long *b, Py_ssize_t nb) nogil:
    """In-place pseudo-remainder up to a nonzero constant; -1 on overflow.

    The partial remainder is made primitive after every step to keep the
    coefficients small; callers only use the result up to content.
    """
    cdef long long lb = b[nb - 1], c, t
    cdef Py_ssize_t shift, i, j
    while nr >= nb and nr > 0:
        c = r[nr - 1]
        shift = nr - nb
        for i in range(nr):
            if qa_mul_ovf(r[i], lb, &r[i]):
                return -1
        for j in range(nb):
            if qa_mul_ovf(c, b[j], &t) or qa_sub_ovf(r[shift + j], t, &r[shift + j]):
                return -1
        while nr > 0 and r[nr - 1] == 0:
            nr -= 1
        _make_primitive(r, nr)
    return nr


def pgcd(a, b):
    cdef Py_ssize_t na = len(a), nb = len(b), va = 0, vb = 0, v, i, nt
    cdef long long c
    cdef long long *tmp
    if na == 0 or nb == 0:
        return _py.pgcd(a, b)
    cdef long long *A = <long long *> malloc(na * sizeof(long long))
    cdef long long *B = <long long *> malloc(nb * sizeof(long long))
    cdef long long *A0 = A
    cdef long long *B0 = B
    try:
        if _load(a, A) or _load(b, B):
            return _py.pgcd(a, b)
        while A[va] == 0:
            va += 1
        while B[vb] == 0:
            vb += 1
        v = va if va < vb else vb
        A += va
        na -= va
        B += vb
        nb -= vb
        c = _gcd(_content(A, na), _content(B, nb))
        _make_primitive(A, na)
        _make_primitive(B, nb)
        if na < nb:
            A, B = B, A
            na, nb = nb, na
        while nb > 1:
            nt = _prem(A, na, B, nb)
            if nt < 0:
                return _py.pgcd(a, b)
            _make_primitive(A, nt)
            A, B = B, A
            na, nb = nb, nt
        if nb == 1:
            # nonzero constant remainder: primitive gcd is 1
            return (0,) * v + (c,)
        _make_primitive(A, na)
        pc = c
        out = [0] * v
        for i in range(na):
            out.append(A[i] * pc)
        return tuple(out)
    finally:
        free(A0)
        free(B0)
