# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of qstar._kernels_py; see that module for the contracts.

The sextic search runs in __int128, guarded by an exact overflow bound; the
convolution keeps Python integers (coefficients overflow machine words) but
compiles away the loop and indexing overhead.
"""

from math import isqrt

from libc.math cimport sqrtl

COMPILED = True

cdef extern from *:
    ctypedef long long i128 "__int128"

cdef bint _SQ64[64]
cdef bint _SQ63[63]
cdef bint _SQ65[65]
cdef bint _SQ11[11]

cdef void _init_tables():
    cdef int i
    for i in range(64):
        _SQ64[i] = False
    for i in range(63):
        _SQ63[i] = False
    for i in range(65):
        _SQ65[i] = False
    for i in range(11):
        _SQ11[i] = False
    for i in range(66):
        _SQ64[(i * i) & 63] = True
        _SQ63[(i * i) % 63] = True
        _SQ65[(i * i) % 65] = True
        _SQ11[(i * i) % 11] = True

_init_tables()


def perfect_square_root(n):
    """isqrt(n) if n is a perfect square, else None (n >= 0)."""
    if not _SQ64[n & 63]:
        return None
    if not _SQ63[n % 63] or not _SQ65[n % 65] or not _SQ11[n % 11]:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def convolve(list a, list b, Py_ssize_t out_len):
    """First out_len coefficients of the product of integer coefficient lists."""
    cdef Py_ssize_t i, j, lim
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef list out = [0] * out_len
    for i in range(la):
        if i >= out_len:
            break
        ai = a[i]
        if not ai:
            continue
        lim = lb if lb < out_len - i else out_len - i
        for j in range(lim):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


cdef long _cgcd(long a, long b):
    cdef long t
    if a < 0:
        a = -a
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef i128 _isqrt128(i128 t):
    cdef i128 r = <i128> sqrtl(<long double> t)
    while r > 0 and r * r > t:
        r -= 1
    while (r + 1) * (r + 1) <= t:
        r += 1
    return r


def search_sextic(coeffs, long height):
    """Solutions of s**2 = sum(coeffs[i] * u**i * v**(6-i)) in coprime u, v.

    Same contract and ordering as the pure twin; falls back to it when the
    intermediate values cannot be proven to fit in 126 bits.
    """
    c = [int(x) for x in coeffs]
    if len(c) != 7:
        raise ValueError("expected 7 sextic coefficients")
    bound = sum(abs(x) for x in c) * (int(height) ** 6)
    if bound >> 126 or any(abs(x) >> 62 for x in c):
        from . import _kernels_py
        return _kernels_py.search_sextic(coeffs, height)
    cdef i128 a0 = c[0], a1 = c[1], a2 = c[2], a3 = c[3]
    cdef i128 a4 = c[4], a5 = c[5], a6 = c[6]
    cdef i128 v2, v3, v4, v5, v6, c0, c1, c2, c3, c4, c5, t, s
    cdef long v, u
    cdef list out = []
    for v in range(1, height + 1):
        v2 = <i128> v * v
        v3 = v2 * v
        v4 = v3 * v
        v5 = v4 * v
        v6 = v5 * v
        c0 = a0 * v6
        c1 = a1 * v5
        c2 = a2 * v4
        c3 = a3 * v3
        c4 = a4 * v2
        c5 = a5 * v
        for u in range(-height, height + 1):
            if _cgcd(u, v) != 1:
                continue
            t = ((((((a6 * u + c5) * u + c4) * u + c3) * u + c2) * u + c1) * u) + c0
            if t < 0:
                continue
            if not _SQ64[<int> (t & 63)]:
                continue
            if not _SQ63[<int> (t % 63)]:
                continue
            if not _SQ65[<int> (t % 65)]:
                continue
            if not _SQ11[<int> (t % 11)]:
                continue
            s = _isqrt128(t)
            if s * s == t:
                out.append((u, v, <long long> s))
    return out
