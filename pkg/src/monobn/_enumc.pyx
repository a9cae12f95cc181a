# cython: boundscheck=False, wraparound=False, cdivision=True
# Compiled enumeration kernel: mixed-radix sweep over all free-variable
# assignments, chain-rule product per assignment, bucketed by target value.

import numpy as np

cimport numpy as cnp


def accumulate_target(cnp.int64_t[::1] cards,
                      cnp.float64_t[::1] cpt_data,
                      cnp.int64_t[::1] cpt_offsets,
                      cnp.int64_t[::1] parent_data,
                      cnp.int64_t[::1] parent_offsets,
                      cnp.int64_t[::1] evidence,
                      int target):
    """Unnormalized posterior mass per target value, summed over free variables.

    Same contract as monobn._enum_py.accumulate_target.
    """
    cdef int n = cards.shape[0]
    out = np.zeros(cards[target], dtype=np.float64)
    cdef cnp.float64_t[::1] outv = out
    idx_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] idx = idx_arr
    free_arr = np.array([v for v in range(n) if evidence[v] < 0], dtype=np.int64)
    cdef cnp.int64_t[::1] free = free_arr
    cdef int nfree = free.shape[0]
    cdef int v, pos
    cdef cnp.int64_t k, row
    cdef double p

    for v in range(n):
        if evidence[v] >= 0:
            idx[v] = evidence[v]
    if nfree == 0:
        raise ValueError("target variable must be free")

    while True:
        p = 1.0
        for v in range(n):
            row = 0
            for k in range(parent_offsets[v], parent_offsets[v + 1]):
                row = row * cards[parent_data[k]] + idx[parent_data[k]]
            p = p * cpt_data[cpt_offsets[v] + row * cards[v] + idx[v]]
        outv[idx[target]] += p
        pos = nfree - 1
        while pos >= 0:
            v = <int> free[pos]
            idx[v] += 1
            if idx[v] < cards[v]:
                break
            idx[v] = 0
            pos -= 1
        if pos < 0:
            break
    return out
