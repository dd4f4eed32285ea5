# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same API as _kernels_py (see its docstring)."""

from libc.stdint cimport int64_t
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy

INT64_MAX = 2**63 - 1

BACKEND = "compiled"

PATTERNS3 = (
    (0, 1, 2),
    (0, 2, 1),
    (1, 0, 2),
    (1, 2, 0),
    (2, 0, 1),
    (2, 1, 0),
)

cdef int64_t _INT64_MAX = 0x7FFFFFFFFFFFFFFF

cdef int _TERNARY_RANK_MAPS[3][3]
_TERNARY_RANK_MAPS[0][:] = [0, 1, 2]
_TERNARY_RANK_MAPS[1][:] = [1, 0, 2]
_TERNARY_RANK_MAPS[2][:] = [0, 2, 1]

cdef int _PAT3[6][3]
_PAT3[0][:] = [0, 1, 2]
_PAT3[1][:] = [0, 2, 1]
_PAT3[2][:] = [1, 0, 2]
_PAT3[3][:] = [1, 2, 0]
_PAT3[4][:] = [2, 0, 1]
_PAT3[5][:] = [2, 1, 0]


cdef inline int64_t _checked_add(int64_t a, int64_t b) except? -1:
    if a > _INT64_MAX - b:
        raise OverflowError("count exceeds signed 64-bit range")
    return a + b


def count_subword(bytes w, bytes v):
    cdef const unsigned char* ws = w
    cdef const unsigned char* vs = v
    cdef Py_ssize_t n = len(w), m = len(v)
    cdef Py_ssize_t i, j
    cdef int64_t* dp = <int64_t*> malloc((m + 1) * sizeof(int64_t))
    if dp == NULL:
        raise MemoryError()
    try:
        for j in range(m + 1):
            dp[j] = 0
        dp[0] = 1
        for i in range(n):
            for j in range(m, 0, -1):
                if vs[j - 1] == ws[i]:
                    dp[j] = _checked_add(dp[j], dp[j - 1])
        return dp[m]
    finally:
        free(dp)


cdef int _matrix_into(const unsigned char* ws, Py_ssize_t n, int k,
                      int64_t* mat) except -1:
    # mat is a (k+1)*(k+1) row-major buffer; fills it with the matrix of w.
    cdef int dim = k + 1
    cdef int i, j, r
    cdef Py_ssize_t p
    for i in range(dim):
        for j in range(dim):
            mat[i * dim + j] = 1 if i == j else 0
    for p in range(n):
        r = ws[p]
        for i in range(r + 1):
            mat[i * dim + r + 1] = _checked_add(
                mat[i * dim + r + 1], mat[i * dim + r])
    return 0


def parikh_matrix(bytes w, int k):
    cdef const unsigned char* ws = w
    cdef Py_ssize_t n = len(w)
    cdef int dim = k + 1
    cdef int i, j
    cdef int64_t* mat = <int64_t*> malloc(dim * dim * sizeof(int64_t))
    if mat == NULL:
        raise MemoryError()
    try:
        _matrix_into(ws, n, k, mat)
        return [[mat[i * dim + j] for j in range(dim)] for i in range(dim)]
    finally:
        free(mat)


def m_equivalent(bytes u, bytes v, int k):
    cdef const unsigned char* us = u
    cdef const unsigned char* vs = v
    cdef Py_ssize_t n = len(u)
    cdef int dim = k + 1
    cdef int i
    cdef bint same = True
    if n != len(v):
        return False
    cdef int64_t* buf = <int64_t*> malloc(2 * dim * dim * sizeof(int64_t))
    if buf == NULL:
        raise MemoryError()
    try:
        _matrix_into(us, n, k, buf)
        _matrix_into(vs, n, k, buf + dim * dim)
        for i in range(dim * dim):
            if buf[i] != buf[dim * dim + i]:
                same = False
                break
        return same
    finally:
        free(buf)


def strong_equivalent_ternary(bytes u, bytes v):
    cdef const unsigned char* us = u
    cdef const unsigned char* vs = v
    cdef Py_ssize_t n = len(u), p
    cdef int t, i
    cdef int64_t mu[16]
    cdef int64_t mv[16]
    cdef unsigned char* pu
    cdef unsigned char* pv
    cdef bint same
    if n != len(v):
        return False
    cdef unsigned char* buf = <unsigned char*> malloc(2 * n if n else 1)
    if buf == NULL:
        raise MemoryError()
    pu = buf
    pv = buf + n
    try:
        for t in range(3):
            for p in range(n):
                pu[p] = _TERNARY_RANK_MAPS[t][us[p]]
                pv[p] = _TERNARY_RANK_MAPS[t][vs[p]]
            _matrix_into(pu, n, 3, mu)
            _matrix_into(pv, n, 3, mv)
            same = True
            for i in range(16):
                if mu[i] != mv[i]:
                    same = False
                    break
            if not same:
                return False
        return True
    finally:
        free(buf)


def pattern_counts3(bytes w):
    cdef const unsigned char* ws = w
    cdef Py_ssize_t n = len(w), p
    cdef int t, a, x
    cdef int64_t singles[3]
    cdef int64_t pairs[3][3]
    cdef int64_t triples[6]
    for a in range(3):
        singles[a] = 0
        for x in range(3):
            pairs[a][x] = 0
    for t in range(6):
        triples[t] = 0
    for p in range(n):
        x = ws[p]
        for t in range(6):
            if _PAT3[t][2] == x:
                triples[t] = _checked_add(
                    triples[t], pairs[_PAT3[t][0]][_PAT3[t][1]])
        for a in range(3):
            if a != x:
                pairs[a][x] = _checked_add(pairs[a][x], singles[a])
        singles[x] += 1
    return (triples[0], triples[1], triples[2],
            triples[3], triples[4], triples[5])


def alpha_beta_sites(bytes w):
    cdef const unsigned char* ws = w
    cdef Py_ssize_t n = len(w), i, j
    cdef unsigned char a, b
    sites = []
    for i in range(n - 3):
        a = ws[i]
        b = ws[i + 1]
        if a == b:
            continue
        for j in range(i + 2, n - 1):
            if ws[j] == b and ws[j + 1] == a:
                sites.append((i, j))
    return sites


def se_sites(bytes w):
    cdef const unsigned char* ws = w
    cdef Py_ssize_t n = len(w), i, j
    cdef unsigned char a, b
    sites = []
    for i in range(n - 3):
        a = ws[i]
        b = ws[i + 1]
        if a == b:
            continue
        for j in range(i + 2, n - 1):
            if ws[j] == b and ws[j + 1] == a:
                sites.append((i, j))
            if ws[j] != a and ws[j] != b:
                break
    return sites


def swap_adjacent_pairs(bytes w, positions):
    cdef Py_ssize_t n = len(w)
    cdef Py_ssize_t p
    cdef unsigned char tmp
    out = bytearray(w)
    cdef unsigned char* os = out
    for p in positions:
        tmp = os[p]
        os[p] = os[p + 1]
        os[p + 1] = tmp
    return bytes(out)


def se_neighbors(bytes w):
    return [(swap_adjacent_pairs(w, (i, j)), i, j) for i, j in se_sites(w)]
