# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels; same contract as ``_kernels_py``.

Arithmetic runs in long double and is rounded to double on output.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef enum:
    NJ = 5  # order-4 jets


cdef inline void jmul(const long double* a, const long double* b, long double* out, int m) noexcept nogil:
    cdef int k, j
    cdef long double acc
    for k in range(m):
        acc = 0.0
        for j in range(k + 1):
            acc += a[j] * b[k - j]
        out[k] = acc


cdef inline void jdiv(const long double* a, const long double* b, long double* out, int m) noexcept nogil:
    cdef int k, j
    cdef long double acc
    for k in range(m):
        acc = a[k]
        for j in range(1, k + 1):
            acc -= b[j] * out[k - j]
        out[k] = acc / b[0]


cdef inline void jderiv(const long double* a, long double* out, int m) noexcept nogil:
    # m = length of the result
    cdef int k
    for k in range(m):
        out[k] = (k + 1) * a[k + 1]


cdef inline void jtimes_s(const long double* a, long double s, long double* out, int m) noexcept nogil:
    # multiply by the variable jet (s, 1, 0, ...)
    cdef int k
    out[0] = s * a[0]
    for k in range(1, m):
        out[k] = s * a[k] + a[k - 1]


cdef void jpoly(const long double* c, int nc, long double s, long double* out) noexcept nogil:
    cdef long double tmp[NJ]
    cdef int i, k
    for k in range(NJ):
        out[k] = 0.0
    out[0] = c[nc - 1]
    for i in range(nc - 2, -1, -1):
        jtimes_s(out, s, tmp, NJ)
        for k in range(NJ):
            out[k] = tmp[k]
        out[0] += c[i]


def generic_jets(double[::1] coeffs, double[::1] s, double[::1] b2, double[::1] n):
    cdef Py_ssize_t m = s.shape[0], p
    cdef int nc = coeffs.shape[0], k
    cdef cnp.ndarray[cnp.float64_t, ndim=3] res = np.empty((m, 6, 3))
    cdef double[:, :, ::1] out = res
    cdef long double[::1] cl = np.asarray(coeffs, dtype=np.longdouble)
    cdef long double[::1] dc = np.zeros(max(nc - 1, 1), dtype=np.longdouble)
    cdef int ndc = max(nc - 1, 1)
    cdef long double ph[NJ]
    cdef long double dph[NJ]
    cdef long double den[NJ]
    cdef long double Q[NJ]
    cdef long double Qp[NJ]
    cdef long double Qpp[NJ]
    cdef long double sQ[NJ]
    cdef long double bms[NJ]
    cdef long double Delta[NJ]
    cdef long double psi[NJ]
    cdef long double t1[NJ]
    cdef long double t2[NJ]
    cdef long double t3[NJ]
    cdef long double t4[NJ]
    cdef long double Phi[NJ]
    cdef long double tmp[NJ]
    cdef long double x, fact[3]
    fact[0] = 1.0
    fact[1] = 1.0
    fact[2] = 2.0
    for k in range(1, nc):
        dc[k - 1] = k * cl[k]
    with nogil:
        for p in range(m):
            x = s[p]
            jpoly(&cl[0], nc, x, ph)
            jpoly(&dc[0], ndc, x, dph)
            jtimes_s(dph, x, tmp, NJ)
            for k in range(NJ):
                den[k] = ph[k] - tmp[k]
            jdiv(dph, den, Q, NJ)
            jderiv(Q, Qp, 4)
            jderiv(Qp, Qpp, 3)
            jtimes_s(Q, x, sQ, NJ)
            bms[0] = b2[p] - x * x
            bms[1] = -2.0 * x
            bms[2] = -1.0
            bms[3] = 0.0
            bms[4] = 0.0
            jmul(bms, Qp, tmp, 4)
            for k in range(4):
                Delta[k] = sQ[k] + tmp[k]
            Delta[0] += 1.0
            for k in range(4):
                tmp[k] = 2.0 * Delta[k]
            jdiv(Qp, tmp, psi, 4)
            # Phi = (s Q' - Q)(n Delta + 1 + s Q) - (b2 - s^2)(1 + s Q) Q''
            jtimes_s(Qp, x, t1, 4)
            for k in range(4):
                t1[k] -= Q[k]
                t2[k] = n[p] * Delta[k] + sQ[k]
            t2[0] += 1.0
            jmul(t1, t2, Phi, 3)
            for k in range(4):
                t3[k] = sQ[k]
            t3[0] += 1.0
            jmul(bms, t3, t4, 3)
            jmul(t4, Qpp, tmp, 3)
            for k in range(3):
                Phi[k] -= tmp[k]
            for k in range(3):
                out[p, 0, k] = <double>(Q[k] * fact[k])
                out[p, 1, k] = <double>(Qp[k] * fact[k])
                out[p, 2, k] = <double>(Qpp[k] * fact[k])
                out[p, 3, k] = <double>(Delta[k] * fact[k])
                out[p, 4, k] = <double>(psi[k] * fact[k])
                out[p, 5, k] = <double>(Phi[k] * fact[k])
    return res


def square_closed(double[::1] s, double[::1] b2, double[::1] n):
    cdef Py_ssize_t m = s.shape[0], p
    cdef cnp.ndarray[cnp.float64_t, ndim=2] res = np.empty((m, 6))
    cdef double[:, ::1] out = res
    cdef long double x, u, bb, nn, br, q1, dl
    with nogil:
        for p in range(m):
            x = s[p]
            bb = b2[p]
            nn = n[p]
            u = 1.0 / (1.0 - x)
            q1 = 2.0 * u * u
            dl = (1.0 - 3.0 * x * x + 2.0 * bb) * u * u
            out[p, 0] = <double>(2.0 * u)
            out[p, 1] = <double>q1
            out[p, 2] = <double>(4.0 * u * u * u)
            out[p, 3] = <double>dl
            out[p, 4] = <double>(q1 / (2.0 * dl))
            br = (-6.0 * nn * x * x * x + 3.0 * (nn + 1.0) * x * x
                  + 2.0 * (1.0 + nn + (2.0 * nn - 1.0) * bb) * x - (1.0 + nn) * (1.0 + 2.0 * bb))
            out[p, 5] = <double>(2.0 * br * u * u * u * u)
    return res


def randers_square_closed(double[::1] s, double[::1] b2, double[::1] n):
    cdef Py_ssize_t m = s.shape[0], p
    cdef cnp.ndarray[cnp.float64_t, ndim=2] res = np.empty((m, 6))
    cdef double[:, ::1] out = res
    cdef long double x, w, bb, nn, num, x2, x3, x4, x5, x6, x7, q1, dl
    with nogil:
        for p in range(m):
            x = s[p]
            bb = b2[p]
            nn = n[p]
            x2 = x * x
            x3 = x2 * x
            x4 = x3 * x
            x5 = x4 * x
            x6 = x5 * x
            x7 = x6 * x
            w = 1.0 / (1.0 - x2)
            q1 = (2.0 * x2 + 6.0 * x + 2.0) * w * w
            dl = (-3.0 * x4 - 9.0 * x3 + (2.0 * bb - 2.0) * x2 + (6.0 * bb + 3.0) * x
                  + 2.0 * bb + 1.0) * w * w
            out[p, 0] = <double>((2.0 * x + 3.0) * w)
            out[p, 1] = <double>q1
            out[p, 2] = <double>((4.0 * x3 + 18.0 * x2 + 12.0 * x + 6.0) * w * w * w)
            out[p, 3] = <double>dl
            out[p, 4] = <double>(q1 / (2.0 * dl))
            num = (-12.0 * nn * x7 + (9.0 - 63.0 * nn) * x6
                   + (8.0 * nn * bb - 4.0 * bb - 89.0 * nn + 43.0) * x5
                   + (42.0 * nn * bb - 30.0 * bb + 3.0 * nn + 75.0) * x4
                   + (62.0 * nn * bb - 70.0 * bb + 58.0 * nn + 70.0) * x3
                   + (12.0 * nn * bb - 60.0 * bb + 15.0 * nn + 15.0) * x2
                   - (18.0 * nn * bb + 30.0 * bb + 9.0 * nn + 9.0) * x
                   - (6.0 * nn * bb + 6.0 * bb + 3.0 * nn + 3.0))
            out[p, 5] = <double>(num * w * w * w * w)
    return res
