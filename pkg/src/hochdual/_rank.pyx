# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled fraction-free rank kernel over int64.

Same algorithm as ``_rank_py.rank_int``.  Raises ``OverflowError`` when an
intermediate entry leaves the int64 range; the caller then reruns the
matrix through the arbitrary-precision fallback.
"""
from libcpp.vector cimport vector
from libcpp.pair cimport pair
from libc.stdint cimport int64_t

ctypedef pair[int, int64_t] entry
ctypedef vector[entry] svec

cdef extern from *:
    """
    static inline int mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int mul_ovf(long long a, long long b, long long *r) nogil
    int sub_ovf(long long a, long long b, long long *r) nogil


cdef inline int64_t _gcd(int64_t a, int64_t b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef void _normalize(svec& v) nogil:
    cdef int64_t g = 0
    cdef size_t i
    for i in range(v.size()):
        g = _gcd(g, v[i].second)
        if g == 1:
            break
    if v[0].second < 0:
        g = -g
    if g != 1:
        for i in range(v.size()):
            v[i].second = v[i].second // g


cdef int _reduce(svec& v, const svec& p, svec& out) nogil:
    # out = a*v - c*p with a, c the reduced leading coefficients
    cdef long long a = p[0].second
    cdef long long c = v[0].second
    cdef long long g = _gcd(a, c)
    cdef long long x, y, z
    cdef size_t i = 0, j = 0
    a //= g
    c //= g
    out.clear()
    while i < v.size() or j < p.size():
        if j >= p.size() or (i < v.size() and v[i].first < p[j].first):
            if mul_ovf(a, v[i].second, &x):
                return 1
            out.push_back(entry(v[i].first, x))
            i += 1
        elif i >= v.size() or p[j].first < v[i].first:
            if mul_ovf(c, p[j].second, &y):
                return 1
            out.push_back(entry(p[j].first, -y))
            j += 1
        else:
            if mul_ovf(a, v[i].second, &x) or mul_ovf(c, p[j].second, &y):
                return 1
            if sub_ovf(x, y, &z):
                return 1
            if z != 0:
                out.push_back(entry(v[i].first, z))
            i += 1
            j += 1
    return 0


def rank_int(vectors):
    """Exact rank of a list of sparse integer vectors (dicts)."""
    cdef vector[svec] rows
    cdef svec v, tmp
    cdef int ncoords = 0
    cdef int lead
    cdef int rank = 0
    cdef size_t r
    cdef int failed = 0
    for vec in sorted((u for u in vectors if u), key=len):
        v.clear()
        for k in sorted(vec):
            v.push_back(entry(k, vec[k]))
            if k + 1 > ncoords:
                ncoords = k + 1
        rows.push_back(v)
    cdef vector[int] pivot_of = vector[int](ncoords, -1)
    cdef vector[svec] pivots
    with nogil:
        for r in range(rows.size()):
            v = rows[r]
            while v.size() > 0:
                lead = v[0].first
                if pivot_of[lead] < 0:
                    _normalize(v)
                    pivot_of[lead] = <int>pivots.size()
                    pivots.push_back(v)
                    rank += 1
                    break
                if _reduce(v, pivots[pivot_of[lead]], tmp):
                    failed = 1
                    break
                if tmp.size() > 0:
                    _normalize(tmp)
                v.swap(tmp)
            if failed:
                break
    if failed:
        raise OverflowError("int64 overflow in rank kernel")
    return rank
