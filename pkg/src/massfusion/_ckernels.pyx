# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled clause-mask kernels.

Same contract as ``_pykernels``: elements are sorted tuples of clause
bitmasks forming an antichain under subset inclusion.  Frames are capped at
16 labels, so every clause fits comfortably in an unsigned 32-bit integer
and a merged clause list fits in a small stack buffer.
"""

BACKEND = "compiled"

DEF MAXCLAUSES = 4096


cdef int _sort_unique(unsigned int *buf, int n) noexcept:
    # insertion sort + dedupe; clause lists are short
    cdef int i, j, k
    cdef unsigned int v
    for i in range(1, n):
        v = buf[i]
        j = i - 1
        while j >= 0 and buf[j] > v:
            buf[j + 1] = buf[j]
            j -= 1
        buf[j + 1] = v
    k = 0
    for i in range(n):
        if k == 0 or buf[k - 1] != buf[i]:
            buf[k] = buf[i]
            k += 1
    return k


cdef tuple _absorb_buf(unsigned int *buf, int n):
    cdef unsigned int out[MAXCLAUSES]
    cdef int i, j, m
    cdef bint dead
    n = _sort_unique(buf, n)
    m = 0
    for i in range(n):
        dead = 0
        for j in range(m):
            if out[j] & ~buf[i] == 0:
                dead = 1
                break
        if not dead:
            out[m] = buf[i]
            m += 1
    return tuple([out[i] for i in range(m)])


def absorb_masks(masks):
    """Reduce an iterable of clause masks to a sorted antichain tuple."""
    cdef unsigned int buf[MAXCLAUSES]
    cdef int n = 0
    for m in masks:
        if n >= MAXCLAUSES:
            raise OverflowError("too many clauses")
        buf[n] = <unsigned int> m
        n += 1
    return _absorb_buf(buf, n)


def intersect_canon(tuple a, tuple b):
    """Canonical form of the intersection of two canonical elements."""
    cdef unsigned int buf[MAXCLAUSES]
    cdef int n = 0
    if a == b:
        return a
    for m in a:
        buf[n] = <unsigned int> m
        n += 1
    for m in b:
        if n >= MAXCLAUSES:
            raise OverflowError("too many clauses")
        buf[n] = <unsigned int> m
        n += 1
    return _absorb_buf(buf, n)


def union_canon(tuple a, tuple b):
    """Canonical form of the union of two canonical elements."""
    cdef unsigned int buf[MAXCLAUSES]
    cdef unsigned int x
    cdef int n = 0
    if a == b:
        return a
    for mx in a:
        x = <unsigned int> mx
        for my in b:
            if n >= MAXCLAUSES:
                raise OverflowError("too many clauses")
            buf[n] = x | <unsigned int> my
            n += 1
    return _absorb_buf(buf, n)
