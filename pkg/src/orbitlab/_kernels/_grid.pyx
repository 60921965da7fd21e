# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid-scan kernels; see _grid_py.py for the reference semantics."""

from libc.math cimport INFINITY, cos, exp, sin, sqrt
from libc.stdlib cimport free, malloc

BACKEND = "compiled"


def nearest_distances(grid, cloud, Py_ssize_t dim):
    cdef Py_ssize_t gn, cn, m, g, i, j, d, best_j, base, off
    cdef double best, s, t
    cdef double *gbuf
    cdef double *cbuf

    if dim <= 0:
        raise ValueError("dim must be positive")
    gn = len(grid)
    cn = len(cloud)
    if gn % dim or cn % dim:
        raise ValueError("flat arrays must have length divisible by dim")
    m = cn // dim
    if m == 0:
        raise ValueError("cloud is empty")
    g = gn // dim

    gbuf = <double *> malloc(gn * sizeof(double)) if gn else <double *> malloc(sizeof(double))
    cbuf = <double *> malloc(cn * sizeof(double))
    if gbuf == NULL or cbuf == NULL:
        free(gbuf)
        free(cbuf)
        raise MemoryError()
    try:
        for i in range(gn):
            gbuf[i] = grid[i]
        for i in range(cn):
            cbuf[i] = cloud[i]

        dists = [0.0] * g
        idxs = [0] * g
        for i in range(g):
            base = i * dim
            best = INFINITY
            best_j = 0
            for j in range(m):
                off = j * dim
                s = 0.0
                for d in range(dim):
                    t = gbuf[base + d] - cbuf[off + d]
                    s += t * t
                if s < best:
                    best = s
                    best_j = j
            dists[i] = sqrt(best)
            idxs[i] = best_j
        return dists, idxs
    finally:
        free(gbuf)
        free(cbuf)


def spiral_min_scan(double log_base, double angle_rate, double target_re,
                    double target_im, double s_start, double step, Py_ssize_t count):
    cdef Py_ssize_t best_i, i
    cdef double best, s, m, re, im, d2

    if count <= 0:
        raise ValueError("count must be positive")
    best = INFINITY
    best_i = 0
    for i in range(count):
        s = s_start + i * step
        m = exp(s * log_base)
        re = m * cos(s * angle_rate) - target_re
        im = -m * sin(s * angle_rate) - target_im
        d2 = re * re + im * im
        if d2 < best:
            best = d2
            best_i = i
    return best_i, sqrt(best)
