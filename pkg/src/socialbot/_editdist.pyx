# cython: boundscheck=False, wraparound=False
"""Compiled Levenshtein kernel used by textmatch for fuzzy name search."""

from libc.stdlib cimport free, malloc


def levenshtein(str a, str b):
    """Edit distance between two strings (insert/delete/substitute, cost 1)."""
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t lb = len(b)
    if la == 0:
        return lb
    if lb == 0:
        return la

    cdef int *prev = <int *> malloc((lb + 1) * sizeof(int))
    cdef int *curr = <int *> malloc((lb + 1) * sizeof(int))
    if prev == NULL or curr == NULL:
        if prev != NULL:
            free(prev)
        if curr != NULL:
            free(curr)
        raise MemoryError()

    cdef Py_ssize_t i, j
    cdef int cost, best
    cdef int *tmp
    cdef Py_UCS4 ca

    try:
        for j in range(lb + 1):
            prev[j] = <int> j
        for i in range(la):
            curr[0] = <int> (i + 1)
            ca = a[i]
            for j in range(lb):
                cost = 0 if ca == <Py_UCS4> b[j] else 1
                best = prev[j] + cost
                if prev[j + 1] + 1 < best:
                    best = prev[j + 1] + 1
                if curr[j] + 1 < best:
                    best = curr[j] + 1
                curr[j + 1] = best
            tmp = prev
            prev = curr
            curr = tmp
        return prev[lb]
    finally:
        free(prev)
        free(curr)
