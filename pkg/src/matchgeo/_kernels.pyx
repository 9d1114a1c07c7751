# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled two-qubit gate application on a batch of dense state vectors."""

cimport cython

BACKEND = "cython"


def apply_two_qubit(double complex[:, ::1] state, const double complex[:, ::1] gate,
                    Py_ssize_t u, Py_ssize_t v):
    """Apply ``gate`` to qubits ``(u, v)`` of every column of ``state`` in place.

    Qubit ``q`` is bit ``q`` of the row index; ``u`` is the high bit of the
    gate's local index.
    """
    cdef Py_ssize_t dim = state.shape[0]
    cdef Py_ssize_t batch = state.shape[1]
    cdef Py_ssize_t bu = (<Py_ssize_t>1) << u
    cdef Py_ssize_t bv = (<Py_ssize_t>1) << v
    cdef Py_ssize_t lo = bu if bu < bv else bv
    cdef Py_ssize_t hi = bv if bu < bv else bu
    cdef Py_ssize_t quarter = dim >> 2
    cdef Py_ssize_t k, base, b, r, c
    cdef Py_ssize_t idx[4]
    cdef double gr[4][4]
    cdef double gi[4][4]
    cdef double ar[4]
    cdef double ai[4]
    cdef double sr, si
    # interleaved (re, im) view of the C-contiguous state
    cdef double* s = <double*> &state[0, 0]
    for r in range(4):
        for c in range(4):
            gr[r][c] = gate[r, c].real
            gi[r][c] = gate[r, c].imag
    with nogil:
        for k in range(quarter):
            # insert zero bits at positions lo and hi
            base = ((k & ~(lo - 1)) << 1) | (k & (lo - 1))
            base = ((base & ~(hi - 1)) << 1) | (base & (hi - 1))
            idx[0] = 2 * base * batch
            idx[1] = 2 * (base | bv) * batch
            idx[2] = 2 * (base | bu) * batch
            idx[3] = 2 * (base | bu | bv) * batch
            for b in range(0, 2 * batch, 2):
                for c in range(4):
                    ar[c] = s[idx[c] + b]
                    ai[c] = s[idx[c] + b + 1]
                for r in range(4):
                    sr = 0.0
                    si = 0.0
                    for c in range(4):
                        sr = sr + gr[r][c] * ar[c] - gi[r][c] * ai[c]
                        si = si + gr[r][c] * ai[c] + gi[r][c] * ar[c]
                    s[idx[r] + b] = sr
                    s[idx[r] + b + 1] = si
