"""Pure-Python clause-mask kernels.

A lattice element is stored as a sorted tuple of clause bitmasks over the
frame labels.  Each clause denotes the union of its labels; the element
denotes the intersection of its clauses.  All three kernels keep the clause
set absorption-reduced: whenever one clause is a subset of another, the
larger clause is redundant and dropped.  A strict subset always has the
smaller integer value, so scanning masks in ascending order finds every
absorber before its victims.

The compiled twin in ``_ckernels.pyx`` implements the same three functions;
``kernels.py`` picks one at import time.
"""

BACKEND = "pure"


def absorb_masks(masks):
    """Reduce an iterable of clause masks to a sorted antichain tuple."""
    out = []
    for m in sorted(set(masks)):
        for kept in out:
            if kept & ~m == 0:
                break
        else:
            out.append(m)
    return tuple(out)


def intersect_canon(a, b):
    """Canonical form of the intersection of two canonical elements."""
    if a == b:
        return a
    return absorb_masks(a + b)


def union_canon(a, b):
    """Canonical form of the union of two canonical elements."""
    if a == b:
        return a
    return absorb_masks([x | y for x in a for y in b])
