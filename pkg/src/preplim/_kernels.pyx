# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels.

Signature-for-signature twins of ``_kernels_py``; see that module for the
semantics.  All masks fit in 64 bits (the solvers cap problem sizes far
below that) and bitsets passed in must fit in 64 bits as well, which the
callers guard before routing here.
"""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc


def sat_lexmin(int num_vars, list pos_masks, list neg_masks):
    cdef Py_ssize_t m_count = len(pos_masks)
    cdef uint64_t *pos = <uint64_t *> malloc(m_count * sizeof(uint64_t))
    cdef uint64_t *neg = <uint64_t *> malloc(m_count * sizeof(uint64_t))
    if pos == NULL or neg == NULL:
        free(pos); free(neg)
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(m_count):
        pos[i] = <uint64_t> pos_masks[i]
        neg[i] = <uint64_t> neg_masks[i]
    cdef uint64_t total = (<uint64_t> 1) << num_vars
    cdef uint64_t m
    cdef int64_t found = -1
    cdef bint ok
    try:
        for m in range(total):
            ok = True
            for i in range(m_count):
                if (pos[i] & m) == 0 and (neg[i] & ~m) == 0:
                    ok = False
                    break
            if ok:
                found = <int64_t> m
                break
    finally:
        free(pos); free(neg)
    return found


cdef inline bint _subset_precedes(uint64_t a, uint64_t b):
    cdef uint64_t x = a ^ b
    cdef uint64_t low = x & (~x + 1)
    return (a & low) != 0


def stable_lexmin(int num_atoms, list heads, list pos_masks, list neg_masks):
    cdef Py_ssize_t r_count = len(heads)
    cdef uint64_t *head = <uint64_t *> malloc(r_count * sizeof(uint64_t))
    cdef uint64_t *pos = <uint64_t *> malloc(r_count * sizeof(uint64_t))
    cdef uint64_t *neg = <uint64_t *> malloc(r_count * sizeof(uint64_t))
    if head == NULL or pos == NULL or neg == NULL:
        free(head); free(pos); free(neg)
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(r_count):
        head[i] = <uint64_t> heads[i]
        pos[i] = <uint64_t> pos_masks[i]
        neg[i] = <uint64_t> neg_masks[i]
    cdef uint64_t total = (<uint64_t> 1) << num_atoms
    cdef uint64_t cand, derived
    cdef int64_t best = -1
    cdef bint changed
    try:
        for cand in range(total):
            derived = 0
            changed = True
            while changed:
                changed = False
                for i in range(r_count):
                    if (neg[i] & cand) == 0 and (derived & head[i]) == 0 \
                            and (pos[i] & derived) == pos[i]:
                        derived |= head[i]
                        changed = True
            if derived == cand:
                if best < 0 or _subset_precedes(cand, <uint64_t> best):
                    best = <int64_t> cand
    finally:
        free(head); free(pos); free(neg)
    return best


def bn_positive(int num_nodes, int query_index, list parent_bits,
                list true_ok, list false_ok):
    cdef Py_ssize_t n = num_nodes
    cdef Py_ssize_t total_parents = 0
    cdef Py_ssize_t w, j
    for w in range(n):
        total_parents += len(parent_bits[w])
    cdef int *pbits = <int *> malloc(max(total_parents, 1) * sizeof(int))
    cdef int *offset = <int *> malloc((n + 1) * sizeof(int))
    cdef uint64_t *t_ok = <uint64_t *> malloc(n * sizeof(uint64_t))
    cdef uint64_t *f_ok = <uint64_t *> malloc(n * sizeof(uint64_t))
    if pbits == NULL or offset == NULL or t_ok == NULL or f_ok == NULL:
        free(pbits); free(offset); free(t_ok); free(f_ok)
        raise MemoryError()
    cdef Py_ssize_t pos = 0
    for w in range(n):
        offset[w] = <int> pos
        for j in range(len(parent_bits[w])):
            pbits[pos] = <int> parent_bits[w][j]
            pos += 1
        t_ok[w] = <uint64_t> true_ok[w]
        f_ok[w] = <uint64_t> false_ok[w]
    offset[n] = <int> pos
    cdef uint64_t qbit = (<uint64_t> 1) << query_index
    cdef uint64_t total = (<uint64_t> 1) << num_nodes
    cdef uint64_t m, code, allowed
    cdef bint ok, found = False
    try:
        for m in range(total):
            if (m & qbit) == 0:
                continue
            ok = True
            for w in range(n):
                code = 0
                for j in range(offset[w], offset[w + 1]):
                    code = (code << 1) | ((m >> pbits[j]) & 1)
                allowed = t_ok[w] if ((m >> w) & 1) else f_ok[w]
                if ((allowed >> code) & 1) == 0:
                    ok = False
                    break
            if ok:
                found = True
                break
    finally:
        free(pbits); free(offset); free(t_ok); free(f_ok)
    return bool(found)


def csp01_lexmin(int num_vars, list scope_bits, list allowed):
    cdef Py_ssize_t c_count = len(scope_bits)
    cdef Py_ssize_t total_scope = 0
    cdef Py_ssize_t c, j
    for c in range(c_count):
        total_scope += len(scope_bits[c])
    cdef int *bits = <int *> malloc(max(total_scope, 1) * sizeof(int))
    cdef int *offset = <int *> malloc((c_count + 1) * sizeof(int))
    cdef uint64_t *ok_sets = <uint64_t *> malloc(max(c_count, 1) * sizeof(uint64_t))
    if bits == NULL or offset == NULL or ok_sets == NULL:
        free(bits); free(offset); free(ok_sets)
        raise MemoryError()
    cdef Py_ssize_t pos = 0
    for c in range(c_count):
        offset[c] = <int> pos
        for j in range(len(scope_bits[c])):
            bits[pos] = <int> scope_bits[c][j]
            pos += 1
        ok_sets[c] = <uint64_t> allowed[c]
    offset[c_count] = <int> pos
    cdef uint64_t total = (<uint64_t> 1) << num_vars
    cdef uint64_t m, code
    cdef int64_t found = -1
    cdef bint ok
    try:
        for m in range(total):
            ok = True
            for c in range(c_count):
                code = 0
                for j in range(offset[c], offset[c + 1]):
                    code = (code << 1) | ((m >> bits[j]) & 1)
                if ((ok_sets[c] >> code) & 1) == 0:
                    ok = False
                    break
            if ok:
                found = <int64_t> m
                break
    finally:
        free(bits); free(offset); free(ok_sets)
    return found
