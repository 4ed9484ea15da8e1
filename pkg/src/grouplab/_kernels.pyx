# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled set kernels; behaviorally identical to `_kernels_py`."""

import numpy as np

cimport cython
cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"


def close_under_product(cnp.int32_t[:, ::1] table, cnp.int32_t[::1] seed, int identity):
    cdef int n = table.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] mask_arr = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] mask = mask_arr
    cdef cnp.ndarray[cnp.int32_t, ndim=1] mem_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] mem = mem_arr
    cdef int count = 0, start = 0, i, j, a, b, c
    mask[identity] = 1
    mem[count] = identity
    count += 1
    for i in range(seed.shape[0]):
        a = seed[i]
        if not mask[a]:
            mask[a] = 1
            mem[count] = a
            count += 1
    # Process products (fresh x all) and (all x fresh) until no growth.
    while start < count:
        i = start
        start = count
        while i < start:
            a = mem[i]
            for j in range(count):
                b = mem[j]
                c = table[a, b]
                if not mask[c]:
                    mask[c] = 1
                    mem[count] = c
                    count += 1
                c = table[b, a]
                if not mask[c]:
                    mask[c] = 1
                    mem[count] = c
                    count += 1
            i += 1
    out = mem_arr[:count].copy()
    out.sort()
    return out


def product_set(cnp.int32_t[:, ::1] table, cnp.int32_t[::1] a, cnp.int32_t[::1] b):
    cdef int n = table.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] mask_arr = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] mask = mask_arr
    cdef int i, j, c, count = 0
    for i in range(a.shape[0]):
        for j in range(b.shape[0]):
            c = table[a[i], b[j]]
            if not mask[c]:
                mask[c] = 1
                count += 1
    cdef cnp.ndarray[cnp.int32_t, ndim=1] out = np.empty(count, dtype=np.int32)
    cdef int k = 0
    for i in range(n):
        if mask[i]:
            out[k] = i
            k += 1
    return out


def conjugate_set(cnp.int32_t[:, ::1] table, cnp.int32_t[::1] inv,
                  cnp.int32_t[::1] members, int x):
    cdef int m = members.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] out = np.empty(m, dtype=np.int32)
    cdef int i, xi = inv[x]
    for i in range(m):
        out[i] = table[table[xi, members[i]], x]
    out.sort()
    return out


def normalizer_members(cnp.int32_t[:, ::1] table, cnp.int32_t[::1] inv,
                       cnp.int32_t[::1] members):
    cdef int n = table.shape[0]
    cdef int m = members.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] mask_arr = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] mask = mask_arr
    cdef int i, x, xi
    cdef bint ok
    for i in range(m):
        mask[members[i]] = 1
    out_list = []
    for x in range(n):
        xi = inv[x]
        ok = True
        for i in range(m):
            if not mask[table[table[xi, members[i]], x]]:
                ok = False
                break
        if ok:
            out_list.append(x)
    return np.asarray(out_list, dtype=np.int32)


def centralizer_members(cnp.int32_t[:, ::1] table, cnp.int32_t[::1] members):
    cdef int n = table.shape[0]
    cdef int m = members.shape[0]
    cdef int x, i
    cdef bint ok
    out_list = []
    for x in range(n):
        ok = True
        for i in range(m):
            if table[x, members[i]] != table[members[i], x]:
                ok = False
                break
        if ok:
            out_list.append(x)
    return np.asarray(out_list, dtype=np.int32)


def is_closed_subset(cnp.int32_t[:, ::1] table, cnp.int32_t[::1] members):
    cdef int n = table.shape[0]
    cdef int m = members.shape[0]
    if m == 0:
        return True
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] mask_arr = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] mask = mask_arr
    cdef int i, j
    for i in range(m):
        mask[members[i]] = 1
    for i in range(m):
        for j in range(m):
            if not mask[table[members[i], members[j]]]:
                return False
    return True
