# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twins of the kernels in ``_pykernels.py``.

Signatures and return conventions match the numpy versions exactly.  Arrays
must be C-contiguous float64; read-only buffers are accepted.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, expm1, fabs, log1p, INFINITY

cnp.import_array()

NAME = "cython"


cdef inline double _sabs(double p, double t) noexcept nogil:
    cdef double a = fabs(t)
    cdef double e = exp(-p * a)
    return a + log1p(e + e * e) / p


cdef inline double _slope(double p, double t) noexcept nogil:
    cdef double a = fabs(t)
    cdef double e = exp(-p * a)
    cdef double r = -expm1(-2.0 * p * a) / (1.0 + e + e * e)
    if t > 0.0:
        return r
    if t < 0.0:
        return -r
    return 0.0


def smooth_abs(double p, const double[::1] x):
    cdef Py_ssize_t i, n = x.shape[0]
    out = np.empty(n)
    cdef double[::1] o = out
    for i in range(n):
        o[i] = _sabs(p, x[i])
    return out


def abs_slope(double p, const double[::1] x):
    cdef Py_ssize_t i, n = x.shape[0]
    out = np.empty(n)
    cdef double[::1] o = out
    for i in range(n):
        o[i] = _slope(p, x[i])
    return out


def residual_true(const double[:, ::1] A, const double[:, ::1] B,
                  const double[::1] q, const double[::1] x):
    cdef Py_ssize_t i, j, n = x.shape[0]
    cdef double acc
    out = np.empty(n)
    cdef double[::1] o = out
    for i in range(n):
        acc = q[i]
        for j in range(n):
            acc += A[i, j] * x[j] + B[i, j] * fabs(x[j])
        o[i] = acc
    return out


cdef void _residual_smooth(const double[:, ::1] A, const double[:, ::1] B,
                           const double[::1] q, double p, const double[::1] x,
                           double[::1] sbuf, double[::1] out) noexcept nogil:
    cdef Py_ssize_t i, j, n = x.shape[0]
    cdef double acc
    for j in range(n):
        sbuf[j] = _sabs(p, x[j])
    for i in range(n):
        acc = q[i]
        for j in range(n):
            acc += A[i, j] * x[j] + B[i, j] * sbuf[j]
        out[i] = acc


def residual_smooth(const double[:, ::1] A, const double[:, ::1] B,
                    const double[::1] q, double p, const double[::1] x):
    cdef Py_ssize_t n = x.shape[0]
    out = np.empty(n)
    cdef double[::1] sbuf = np.empty(n)
    _residual_smooth(A, B, q, p, x, sbuf, out)
    return out


cdef double _merit_grad(const double[:, ::1] A, const double[:, ::1] B,
                        const double[::1] q, double p, const double[::1] x,
                        double[::1] sbuf, double[::1] Ft,
                        double[::1] grad) noexcept nogil:
    cdef Py_ssize_t i, j, n = x.shape[0]
    cdef double f = 0.0, ga, gb
    _residual_smooth(A, B, q, p, x, sbuf, Ft)
    for i in range(n):
        f += Ft[i] * Ft[i]
    for j in range(n):
        ga = 0.0
        gb = 0.0
        for i in range(n):
            ga += A[i, j] * Ft[i]
            gb += B[i, j] * Ft[i]
        grad[j] = ga + _slope(p, x[j]) * gb
    return 0.5 * f


def merit_grad(const double[:, ::1] A, const double[:, ::1] B,
               const double[::1] q, double p, const double[::1] x):
    cdef Py_ssize_t n = x.shape[0]
    Ft = np.empty(n)
    grad = np.empty(n)
    cdef double[::1] sbuf = np.empty(n)
    cdef double f = _merit_grad(A, B, q, p, x, sbuf, Ft, grad)
    return f, grad, Ft


def wolfe_search(const double[:, ::1] A, const double[:, ::1] B,
                 const double[::1] q, double p, const double[::1] x,
                 const double[::1] s, double f0, double slope, double rho,
                 double sigma, int max_trials, double max_step):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef int trial
    cdef double lo = 0.0, hi = INFINITY, gamma = 1.0, f, gs
    xt_arr = np.empty(n)
    Ft = np.empty(n)
    grad = np.empty(n)
    cdef double[::1] xt = xt_arr
    cdef double[::1] Ftv = Ft
    cdef double[::1] g = grad
    cdef double[::1] sbuf = np.empty(n)
    for trial in range(1, max_trials + 1):
        for i in range(n):
            xt[i] = x[i] + gamma * s[i]
        f = _merit_grad(A, B, q, p, xt, sbuf, Ftv, g)
        if not f <= f0 - gamma * rho * slope:
            hi = gamma
        else:
            gs = 0.0
            for i in range(n):
                gs += g[i] * s[i]
            if gs < -sigma * slope:
                lo = gamma
                if hi == INFINITY:
                    if gamma >= max_step:
                        return 0.0, trial, None, None, None
                    gamma = min(2.0 * gamma, max_step)
                    continue
            else:
                return gamma, trial, f, grad, Ft
        gamma = 0.5 * (lo + hi)
    return 0.0, max_trials, None, None, None


cdef bint _lu_solve_inplace(double[:, ::1] W, double[::1] rhs, Py_ssize_t k,
                            double pivot_floor) noexcept nogil:
    """Gaussian elimination with partial pivoting on the leading k x k block."""
    cdef Py_ssize_t i, j, col, best
    cdef double big, tmp, factor
    for col in range(k):
        best = col
        big = fabs(W[col, col])
        for i in range(col + 1, k):
            if fabs(W[i, col]) > big:
                big = fabs(W[i, col])
                best = i
        if big <= pivot_floor:
            return False
        if best != col:
            for j in range(k):
                tmp = W[col, j]
                W[col, j] = W[best, j]
                W[best, j] = tmp
            tmp = rhs[col]
            rhs[col] = rhs[best]
            rhs[best] = tmp
        for i in range(col + 1, k):
            factor = W[i, col] / W[col, col]
            if factor != 0.0:
                for j in range(col + 1, k):
                    W[i, j] -= factor * W[col, j]
                rhs[i] -= factor * rhs[col]
    for i in range(k - 1, -1, -1):
        tmp = rhs[i]
        for j in range(i + 1, k):
            tmp -= W[i, j] * rhs[j]
        rhs[i] = tmp / W[i, i]
    return True


def enumerate_supports(const double[:, ::1] M, const double[::1] q,
                       double tol, double pivot_tol):
    cdef Py_ssize_t n = q.shape[0]
    cdef Py_ssize_t i, j, k, size
    cdef unsigned long long mask, low, ripple, limit = (<unsigned long long>1) << n
    cdef double scale, acc
    cdef bint ok
    cdef cnp.intp_t[::1] idx = np.empty(n, dtype=np.intp)
    cdef double[:, ::1] W = np.empty((n, n))
    cdef double[::1] rhs = np.empty(n)
    cdef double[::1] zv
    found = []
    for size in range(n + 1):
        mask = (((<unsigned long long>1) << size) - 1)
        while mask < limit:
            k = 0
            for i in range(n):
                if (mask >> i) & 1:
                    idx[k] = i
                    k += 1
            ok = True
            z = np.zeros(n)
            zv = z
            if k > 0:
                scale = 0.0
                for i in range(k):
                    rhs[i] = -q[idx[i]]
                    for j in range(k):
                        W[i, j] = M[idx[i], idx[j]]
                        if fabs(W[i, j]) > scale:
                            scale = fabs(W[i, j])
                ok = scale > 0.0 and _lu_solve_inplace(W, rhs, k, pivot_tol * scale)
                if ok:
                    for i in range(k):
                        if rhs[i] < -tol:
                            ok = False
                            break
                        zv[idx[i]] = rhs[i]
            if ok:
                for i in range(n):
                    if (mask >> i) & 1:
                        continue
                    acc = q[i]
                    for j in range(n):
                        acc += M[i, j] * zv[j]
                    if acc < -tol:
                        ok = False
                        break
            if ok:
                found.append((int(mask), z))
            if size == 0:
                break
            # next mask with the same popcount (Gosper's hack)
            low = mask & (~mask + 1)
            ripple = mask + low
            mask = (((ripple ^ mask) >> 2) // low) | ripple
    return found
