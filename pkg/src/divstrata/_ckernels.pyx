# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled residue enumeration.  Only valid while ``n**m`` fits in int64."""

from libc.stdlib cimport malloc, free


def residue_codes(basis, long long n, Py_ssize_t m):
    cdef Py_ssize_t k = len(basis)
    cdef Py_ssize_t i, j, pos
    cdef long long code
    cdef long long *vec = <long long *> malloc(max(m, 1) * sizeof(long long))
    cdef long long *w = <long long *> malloc(max(m, 1) * sizeof(long long))
    cdef long long *g = <long long *> malloc(max(k * m, 1) * sizeof(long long))
    cdef long long *coeffs = <long long *> malloc(max(k, 1) * sizeof(long long))
    if not vec or not w or not g or not coeffs:
        free(vec); free(w); free(g); free(coeffs)
        raise MemoryError()
    seen = {0}
    try:
        for j in range(m):
            vec[j] = 0
            w[j] = 1 if j == 0 else w[j - 1] * n
        for i in range(k):
            coeffs[i] = 0
            row = basis[i]
            for j in range(m):
                g[i * m + j] = row[j]
        while True:
            pos = 0
            while pos < k:
                for j in range(m):
                    vec[j] += g[pos * m + j]
                    if vec[j] >= n:
                        vec[j] -= n
                coeffs[pos] += 1
                if coeffs[pos] < n:
                    break
                coeffs[pos] = 0
                pos += 1
            if pos == k:
                return seen
            code = 0
            for j in range(m):
                code += vec[j] * w[j]
            seen.add(code)
    finally:
        free(vec); free(w); free(g); free(coeffs)
