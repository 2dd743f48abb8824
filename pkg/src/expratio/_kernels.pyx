# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel core.

Twin of ``expratio._kernels_py``; see that module for the math notes.
The scalar helpers here mirror the NumPy vectorized ones one-to-one so the
two backends agree to rounding.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, expm1, fabs, log, log1p, INFINITY

cdef double DBL_TINY = 2.2250738585072014e-308  # smallest normal double

cnp.import_array()

BACKEND = "cython"

cdef double LN2 = 0.6931471805599453


cdef inline double _log_sinhc(double y) nogil:
    # ln(sinh(y)/y) for |y| <= ~0.6
    cdef double y2 = y * y
    cdef double w = y2 * (
        1.0 / 6.0
        + y2
        * (
            1.0 / 120.0
            + y2
            * (
                1.0 / 5040.0
                + y2 * (1.0 / 362880.0 + y2 * (1.0 / 39916800.0 + y2 / 6227020800.0))
            )
        )
    )
    return log1p(w)


cdef inline double _log1mexp(double v) nogil:
    # ln(1 - e^{-v}) for v > 0
    if v < LN2:
        return log(-expm1(-v))
    return log1p(-exp(-v))


cdef inline double _ln_abs_expm1(double x) nogil:
    cdef double ax = fabs(x)
    if ax < 1.0:
        if ax == 0.0:
            return -INFINITY
        return log(ax) + 0.5 * x + _log_sinhc(0.5 * ax)
    if x > 0.0:
        return x + _log1mexp(x)
    return _log1mexp(ax)


def log_abs_h(double alpha, double beta, double lam, double mu, t):
    """ln|H(t)| elementwise; t = 0 entries get the continuity limit."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ts = np.ascontiguousarray(t, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(ts)
    cdef double d1 = alpha - beta
    cdef double d2 = lam - mu
    cdef double s0 = beta - mu
    cdef double lim0 = log(fabs(d1 / d2))
    cdef Py_ssize_t i, n = ts.shape[0]
    cdef double ti
    for i in range(n):
        ti = ts[i]
        # t == 0 exactly, or so small a product went subnormal and lost
        # relative precision: use the limit
        if fabs(d1 * ti) < DBL_TINY or fabs(d2 * ti) < DBL_TINY:
            out[i] = lim0
        else:
            out[i] = s0 * ti + _ln_abs_expm1(d1 * ti) - _ln_abs_expm1(d2 * ti)
    return out.reshape(np.shape(t))


def eval_h(double alpha, double beta, double lam, double mu, t):
    """H(t) elementwise, saturating to +-inf / 0 when out of range."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ts = np.ascontiguousarray(t, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(ts)
    cdef double d1 = alpha - beta
    cdef double d2 = lam - mu
    cdef double s0 = beta - mu
    cdef double sign = 1.0 if d1 * d2 > 0.0 else -1.0
    cdef double lim0 = d1 / d2
    cdef Py_ssize_t i, n = ts.shape[0]
    cdef double ti, L
    for i in range(n):
        ti = ts[i]
        if fabs(d1 * ti) < DBL_TINY or fabs(d2 * ti) < DBL_TINY:
            out[i] = lim0
        else:
            L = s0 * ti + _ln_abs_expm1(d1 * ti) - _ln_abs_expm1(d2 * ti)
            if L > 709.0:
                out[i] = sign * INFINITY
            else:
                out[i] = sign * exp(L)
    return out.reshape(np.shape(t))


cdef inline double _bounded(double d1, double d2, bint sigma1, bint sigma2, double tj) nogil:
    cdef double v1 = fabs(d1 * tj)
    cdef double v2 = fabs(d2 * tj)
    cdef double g1, g2
    if sigma1:
        g1 = _log_sinhc(0.5 * v1)
    else:
        g1 = _log1mexp(v1)
    if sigma2:
        g2 = _log_sinhc(0.5 * v2)
    else:
        g2 = _log1mexp(v2)
    return g1 - g2


def fd_log_deriv(double alpha, double beta, double lam, double mu, t, int order, step):
    """Richardson-extrapolated central differences of ln|H|.

    Same contract as the python twin: t nonzero, stencil on one side of 0.
    Returns (estimate, error_estimate).
    """
    if order < 1 or order > 4:
        raise ValueError(f"order must be in 1..4, got {order}")
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ts = np.ascontiguousarray(t, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] hs = np.ascontiguousarray(
        np.broadcast_to(np.asarray(step, dtype=np.float64), np.shape(ts))
    )
    cdef cnp.ndarray[cnp.float64_t, ndim=1] est = np.empty_like(ts)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] err = np.empty_like(ts)
    cdef double d1 = alpha - beta
    cdef double d2 = lam - mu
    cdef double s0 = beta - mu
    cdef Py_ssize_t i, n = ts.shape[0]
    cdef double ti, h, e_h, e_h2, g0, gp1, gm1, gp5, gm5, gp2, gm2
    cdef double c_ln, slope, res
    cdef bint sigma1, sigma2
    cdef int k = order
    for i in range(n):
        ti = ts[i]
        h = hs[i]
        sigma1 = fabs(d1 * ti) <= 1.0
        sigma2 = fabs(d2 * ti) <= 1.0
        gp1 = _bounded(d1, d2, sigma1, sigma2, ti + h)
        gm1 = _bounded(d1, d2, sigma1, sigma2, ti - h)
        gp5 = _bounded(d1, d2, sigma1, sigma2, ti + 0.5 * h)
        gm5 = _bounded(d1, d2, sigma1, sigma2, ti - 0.5 * h)
        if k == 1:
            e_h = (gp1 - gm1) / (2.0 * h)
            e_h2 = (gp5 - gm5) / h
        elif k == 2:
            g0 = _bounded(d1, d2, sigma1, sigma2, ti)
            e_h = (gp1 - 2.0 * g0 + gm1) / (h * h)
            e_h2 = 4.0 * (gp5 - 2.0 * g0 + gm5) / (h * h)
        elif k == 3:
            gp2 = _bounded(d1, d2, sigma1, sigma2, ti + 2.0 * h)
            gm2 = _bounded(d1, d2, sigma1, sigma2, ti - 2.0 * h)
            e_h = (gp2 - 2.0 * gp1 + 2.0 * gm1 - gm2) / (2.0 * h * h * h)
            e_h2 = 8.0 * (gp1 - 2.0 * gp5 + 2.0 * gm5 - gm1) / (2.0 * h * h * h)
        else:
            g0 = _bounded(d1, d2, sigma1, sigma2, ti)
            gp2 = _bounded(d1, d2, sigma1, sigma2, ti + 2.0 * h)
            gm2 = _bounded(d1, d2, sigma1, sigma2, ti - 2.0 * h)
            e_h = (gp2 - 4.0 * gp1 + 6.0 * g0 - 4.0 * gm1 + gm2) / (h * h * h * h)
            e_h2 = 16.0 * (gp1 - 4.0 * gp5 + 6.0 * g0 - 4.0 * gm5 + gm1) / (h * h * h * h)
        res = (4.0 * e_h2 - e_h) / 3.0
        err[i] = fabs(e_h2 - e_h) / 3.0

        c_ln = (1.0 if sigma1 else 0.0) - (1.0 if sigma2 else 0.0)
        if k == 1:
            slope = s0
            if sigma1:
                slope += 0.5 * d1
            elif d1 * ti > 0.0:
                slope += d1
            if sigma2:
                slope -= 0.5 * d2
            elif d2 * ti > 0.0:
                slope -= d2
            res += c_ln / ti + slope
        elif k == 2:
            res -= c_ln / (ti * ti)
        elif k == 3:
            res += 2.0 * c_ln / (ti * ti * ti)
        else:
            res -= 6.0 * c_ln / (ti * ti * ti * ti)
        est[i] = res
    return est.reshape(np.shape(t)), err.reshape(np.shape(t))
