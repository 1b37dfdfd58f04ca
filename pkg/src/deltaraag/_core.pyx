# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pycore``.

Same signatures, same results; ``tests/test_backend.py`` checks that.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memset

NAME = "cython"

cdef extern from *:
    int __builtin_clzll(unsigned long long)
    int __builtin_ctzll(unsigned long long)


cdef inline int _highbit(const uint64_t* w, int nw):
    cdef int k
    for k in range(nw - 1, -1, -1):
        if w[k]:
            return k * 64 + 63 - __builtin_clzll(w[k])
    return -1


cdef void _load(object r, uint64_t* dst, int nw):
    cdef bytes raw = (<object>r).to_bytes(nw * 8, "little")
    cdef const unsigned char* src = raw
    cdef int k, j
    cdef uint64_t v
    for k in range(nw):
        v = 0
        for j in range(7, -1, -1):
            v = (v << 8) | src[k * 8 + j]
        dst[k] = v


cdef object _store(const uint64_t* src, int nw):
    cdef bytearray raw = bytearray(nw * 8)
    cdef unsigned char* dst = raw
    cdef int k, j
    cdef uint64_t v
    for k in range(nw):
        v = src[k]
        for j in range(8):
            dst[k * 8 + j] = v & 0xFF
            v >>= 8
    return int.from_bytes(raw, "little")


cdef int _echelon(list rows, uint64_t** out_mat, int** out_where, int* out_nbits, int* out_nw):
    """Semi-echelon insertion; fills a pivot table. Returns the rank."""
    cdef int nbits = 0
    cdef object r
    for r in rows:
        if r.bit_length() > nbits:
            nbits = r.bit_length()
    cdef int nw = (nbits + 63) // 64 if nbits else 1
    cdef int nrows = len(rows)
    cdef uint64_t* mat = <uint64_t*>calloc(<size_t>(nrows if nrows else 1) * nw, sizeof(uint64_t))
    cdef int* where = <int*>malloc(<size_t>(nbits if nbits else 1) * sizeof(int))
    cdef uint64_t* cur
    cdef uint64_t* piv
    cdef int i, h, k, nstored = 0
    for i in range(nbits):
        where[i] = -1
    for i in range(nrows):
        cur = mat + <size_t>nstored * nw
        _load(rows[i], cur, nw)
        h = _highbit(cur, nw)
        while h >= 0:
            if where[h] < 0:
                where[h] = nstored
                nstored += 1
                break
            piv = mat + <size_t>where[h] * nw
            for k in range(h // 64 + 1):
                cur[k] ^= piv[k]
            h = _highbit(cur, h // 64 + 1)
        if h < 0:
            memset(cur, 0, nw * sizeof(uint64_t))
    out_mat[0] = mat
    out_where[0] = where
    out_nbits[0] = nbits
    out_nw[0] = nw
    return nstored


def rank(rows):
    cdef uint64_t* mat
    cdef int* where
    cdef int nbits, nw
    cdef int r = _echelon(list(rows), &mat, &where, &nbits, &nw)
    free(mat)
    free(where)
    return r


def rref(rows):
    cdef uint64_t* mat
    cdef int* where
    cdef uint64_t* pmask
    cdef int nbits, nw, p, q, k, j
    cdef uint64_t x
    cdef uint64_t* row
    cdef uint64_t* other
    _echelon(list(rows), &mat, &where, &nbits, &nw)
    pmask = <uint64_t*>calloc(nw, sizeof(uint64_t))
    pivots = []
    reduced = []
    try:
        for p in range(nbits):
            if where[p] < 0:
                continue
            row = mat + <size_t>where[p] * nw
            # clear lower pivot bits; those pivot rows are already fully reduced,
            # so each xor only touches bits below the pivot it removes
            for k in range(p >> 6, -1, -1):
                x = row[k] & pmask[k]
                while x:
                    q = k * 64 + 63 - __builtin_clzll(x)
                    other = mat + <size_t>where[q] * nw
                    for j in range(k + 1):
                        row[j] ^= other[j]
                    x = row[k] & pmask[k]
            pmask[p >> 6] |= (<uint64_t>1) << (p & 63)
            pivots.append(p)
            reduced.append(_store(row, nw))
    finally:
        free(mat)
        free(where)
        free(pmask)
    return pivots, reduced


def umul(a, b):
    cdef int n = len(a)
    if n > 64:
        raise ValueError("matrix size limit is 64")
    cdef uint64_t br[64]
    cdef uint64_t row, acc
    cdef int i
    for i in range(n):
        br[i] = b[i]
    out = []
    for i in range(n):
        row = a[i]
        acc = 0
        while row:
            acc ^= br[__builtin_ctzll(row)]
            row &= row - 1
        out.append(acc)
    return tuple(out)


cdef int _n
cdef int _total
cdef uint64_t _adj[16]
cdef int _slot[16][16]
cdef int _slotlen[16]
cdef int _perm[16]
cdef int _bestperm[16]
cdef uint64_t _best
cdef int _have


cdef void _rec(int p, unsigned int used, uint64_t code, int nbits):
    global _best, _have
    cdef int i, v, q
    cdef uint64_t c, nv
    if _have and code > (_best >> (_total - nbits)):
        return
    if p == _n:
        if not _have or code < _best:
            _best = code
            _have = 1
            for i in range(_n):
                _bestperm[i] = _perm[i]
        return
    for i in range(_slotlen[p]):
        v = _slot[p][i]
        if (used >> v) & 1:
            continue
        c = code
        nv = _adj[v]
        for q in range(p):
            c = (c << 1) | ((nv >> _perm[q]) & 1)
        _perm[p] = v
        _rec(p + 1, used | ((<unsigned int>1) << v), c, nbits + p)


def canon_search(int n, adj, cells):
    global _n, _total, _best, _have
    if n > 11:
        raise ValueError("canonical search supports at most 11 vertices")
    cdef int p = 0, i
    _n = n
    _total = n * (n - 1) // 2
    for i in range(n):
        _adj[i] = adj[i]
    for cell in cells:
        for _ in range(len(cell)):
            _slotlen[p] = len(cell)
            for i, v in enumerate(cell):
                _slot[p][i] = v
            p += 1
    _have = 0
    _best = 0
    _rec(0, 0, 0, 0)
    if not _have:
        return None, None
    return _best, tuple(_bestperm[i] for i in range(n))
