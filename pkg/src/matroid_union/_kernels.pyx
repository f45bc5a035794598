# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled oracle kernels.

Every function takes the queried element set as a sized Python iterable of
ints and returns a negative code when an element id is out of range.  The
pure-Python twin lives in ``_purekernels`` and must stay signature-compatible.
"""
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memset
from libc.stdint cimport uint64_t

BAD_ID = -1


cdef int _gather(object elems, Py_ssize_t n, int** out, Py_ssize_t* count) except -2:
    cdef Py_ssize_t m = len(elems)
    cdef int* buf = <int*> malloc((m if m > 0 else 1) * sizeof(int))
    cdef Py_ssize_t j = 0
    cdef long x
    if buf == NULL:
        raise MemoryError()
    for item in elems:
        x = item
        if x < 0 or x >= n:
            free(buf)
            return -1
        buf[j] = <int> x
        j += 1
    out[0] = buf
    count[0] = j
    return 0


cdef inline int _find(int* parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def count_valid(object elems, Py_ssize_t n):
    cdef Py_ssize_t c = 0
    cdef long x
    for item in elems:
        x = item
        if x < 0 or x >= n:
            return BAD_ID
        c += 1
    return c


def forest_rank(object elems, const int[:] tail, const int[:] head, int[:] parent,
                bint stop_on_cycle):
    """Edges of a spanning forest among ``elems``; with ``stop_on_cycle`` the
    scan aborts at the first cycle and returns -2."""
    cdef int* ids
    cdef Py_ssize_t m, j
    cdef int a, b, ra, rb, r = 0
    if _gather(elems, tail.shape[0], &ids, &m) < 0:
        return BAD_ID
    with nogil:
        for j in range(m):
            parent[tail[ids[j]]] = tail[ids[j]]
            parent[head[ids[j]]] = head[ids[j]]
        for j in range(m):
            a = tail[ids[j]]
            b = head[ids[j]]
            ra = _find(&parent[0], a)
            rb = _find(&parent[0], b)
            if ra == rb:
                if stop_on_cycle:
                    r = -2
                    break
                continue
            parent[ra] = rb
            r += 1
    free(ids)
    return r


def gf2_rank(object elems, const uint64_t[:] cols, int words, bint stop_on_dependent):
    """Rank of the chosen GF(2) columns (``words`` 64-bit words per column)."""
    cdef Py_ssize_t ncols = cols.shape[0] // words if words > 0 else 0
    cdef int* ids
    cdef Py_ssize_t m, j, t, w
    cdef int r = 0
    cdef uint64_t* basis
    cdef uint64_t* x
    cdef int* piv_word
    cdef uint64_t* piv_bit
    cdef bint zero
    if _gather(elems, ncols, &ids, &m) < 0:
        return BAD_ID
    if words == 0:
        free(ids)
        return -2 if (stop_on_dependent and m > 0) else 0
    basis = <uint64_t*> malloc((m + 1) * words * sizeof(uint64_t))
    piv_word = <int*> malloc((m + 1) * sizeof(int))
    piv_bit = <uint64_t*> malloc((m + 1) * sizeof(uint64_t))
    with nogil:
        for j in range(m):
            x = basis + r * words
            memcpy(x, &cols[ids[j] * words], words * sizeof(uint64_t))
            for t in range(r):
                if x[piv_word[t]] & piv_bit[t]:
                    for w in range(words):
                        x[w] ^= basis[t * words + w]
            zero = True
            for w in range(words):
                if x[w]:
                    piv_word[r] = <int> w
                    piv_bit[r] = x[w] & (~x[w] + 1)
                    zero = False
                    break
            if zero:
                if stop_on_dependent:
                    r = -2
                    break
                continue
            r += 1
    free(basis)
    free(piv_word)
    free(piv_bit)
    free(ids)
    return r


def partition_rank(object elems, const int[:] block_of, const int[:] caps, int[:] counts,
                   bint stop_on_excess):
    """Sum over blocks of min(|S & block|, cap); elements outside every block
    are loops.  ``counts`` is zeroed scratch and is left zeroed."""
    cdef int* ids
    cdef Py_ssize_t m, j
    cdef int b, r = 0
    if _gather(elems, block_of.shape[0], &ids, &m) < 0:
        return BAD_ID
    with nogil:
        for j in range(m):
            b = block_of[ids[j]]
            if b < 0:
                if stop_on_excess:
                    r = -2
                    break
                continue
            if counts[b] < caps[b]:
                r += 1
            elif stop_on_excess:
                r = -2
                break
            counts[b] += 1
        for j in range(m):
            b = block_of[ids[j]]
            if b >= 0:
                counts[b] = 0
    free(ids)
    return r
