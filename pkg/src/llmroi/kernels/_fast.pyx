# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation kernels.

Mirrors kernels/pure.py operation-for-operation; compiled with
-ffp-contract=off so results are bit-identical to the NumPy backend.
"""

NAME = "compiled"


def single_earnings(double[:, ::1] x, double[::1] out, double cost_scale):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double ct
    with nogil:
        for i in range(n):
            ct = (x[i, 2] * x[i, 4]) * cost_scale
            out[i] = x[i, 0] * x[i, 3] - x[i, 1] * (1.0 - x[i, 3]) - ct


def single_roi(double[:, ::1] x, double[::1] out, double cost_scale):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double ct
    with nogil:
        for i in range(n):
            ct = (x[i, 2] * x[i, 4]) * cost_scale
            out[i] = (x[i, 0] * x[i, 3] - x[i, 1] * (1.0 - x[i, 3])) / ct - 1.0


def binary_earnings_canonical(double[:, ::1] x, double[::1] out, double cost_scale):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double ct
    with nogil:
        for i in range(n):
            ct = (x[i, 3] * x[i, 7]) * cost_scale
            out[i] = x[i, 0] * x[i, 6] - x[i, 2] * x[i, 5] - x[i, 1] * x[i, 4] - ct


def binary_roi_canonical(double[:, ::1] x, double[::1] out, double cost_scale):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double ct
    with nogil:
        for i in range(n):
            ct = (x[i, 3] * x[i, 7]) * cost_scale
            out[i] = (x[i, 0] * x[i, 6] - x[i, 2] * x[i, 5] - x[i, 1] * x[i, 4]) / ct - 1.0


def binary_earnings_compat(double[:, ::1] x, double[::1] out, double cost_scale):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double ct, ct2
    with nogil:
        for i in range(n):
            ct = (x[i, 3] * x[i, 7]) * cost_scale
            ct2 = 2.0 * ct
            out[i] = (x[i, 0] - ct2) * x[i, 6] - (x[i, 2] + ct2) * x[i, 5] \
                - (x[i, 1] + ct2) * x[i, 4] - ct


def binary_roi_compat(double[:, ::1] x, double[::1] out, double cost_scale):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double ct, ct2, e
    with nogil:
        for i in range(n):
            ct = (x[i, 3] * x[i, 7]) * cost_scale
            ct2 = 2.0 * ct
            e = (x[i, 0] - ct2) * x[i, 6] - (x[i, 2] + ct2) * x[i, 5] \
                - (x[i, 1] + ct2) * x[i, 4] - ct
            out[i] = e / ct
