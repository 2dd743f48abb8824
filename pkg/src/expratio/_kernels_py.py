"""Pure-python (NumPy) kernel twin.

Same contract as the compiled module ``expratio._kernels``:

    log_abs_h(alpha, beta, lam, mu, t)          -> ln|H(t)| array
    eval_h(alpha, beta, lam, mu, t)             -> H(t) array, saturating
    fd_log_deriv(alpha, beta, lam, mu, t, order, step) -> (estimate, error)

The evaluators never form e^{alpha t} directly.  Everything is built from
the factorization

    ln|e^{alpha t} - e^{beta t}| = ln|d t| + d t / 2 + ln(sinh(|d t|/2) / (|d t|/2))
                                 = max(d t, 0) + ln(1 - e^{-|d t|})

with d = alpha - beta, choosing per term whichever right-hand side keeps the
non-affine remainder small (|d t| <= 1: sinh form, else the log1p form).
That keeps ln|H| accurate through the removable singularity at t = 0 and
free of overflow for |t| in the thousands.

The finite-difference driver applies central stencils with one Richardson
pass to the non-affine remainder only; affine pieces and the ln|t| carried
by the sinh form are differentiated exactly.  This is pure bookkeeping (the
dropped pieces are elementary), but it keeps the rounding noise of the
difference quotients proportional to the local derivative scale instead of
to |ln H|, which is what makes high-order sign checks trustworthy.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

_LN2 = 0.6931471805599453


def _log_sinhc(y):
    """ln(sinh(y)/y) for |y| <= ~0.55, series + log1p (even in y)."""
    y2 = y * y
    w = y2 * (
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
    return np.log1p(w)


def _log1mexp(v):
    """ln(1 - e^{-v}) for v > 0, accurate for both small and large v."""
    v = np.asarray(v, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        small = np.log(-np.expm1(-v))
        large = np.log1p(-np.exp(-v))
    return np.where(v < _LN2, small, large)


def _ln_abs_expm1(x):
    """ln|e^x - 1| without overflow or cancellation."""
    x = np.asarray(x, dtype=np.float64)
    ax = np.abs(x)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        near = np.log(ax) + 0.5 * x + _log_sinhc(np.minimum(ax, 1.0) * 0.5)
        far = np.maximum(x, 0.0) + _log1mexp(np.maximum(ax, 1.0))
    return np.where(ax < 1.0, near, far)


def log_abs_h(alpha, beta, lam, mu, t):
    """ln|H(t)| elementwise; t = 0 entries get the continuity limit."""
    t = np.asarray(t, dtype=np.float64)
    d1 = alpha - beta
    d2 = lam - mu
    s0 = beta - mu
    x1 = d1 * t
    x2 = d2 * t
    with np.errstate(invalid="ignore"):
        out = s0 * t + _ln_abs_expm1(x1) - _ln_abs_expm1(x2)
    # t == 0 exactly, or so small that a product is subnormal and has lost
    # relative precision: use the limit (error there is O(|d| |t|), far
    # below double resolution)
    tiny = np.finfo(np.float64).tiny
    return np.where((np.abs(x1) < tiny) | (np.abs(x2) < tiny),
                    np.log(abs(d1 / d2)), out)


def eval_h(alpha, beta, lam, mu, t):
    """H(t) elementwise, saturating to +-inf / 0 when out of range."""
    t = np.asarray(t, dtype=np.float64)
    d1 = alpha - beta
    d2 = lam - mu
    sign = 1.0 if d1 * d2 > 0.0 else -1.0
    with np.errstate(over="ignore"):
        out = sign * np.exp(log_abs_h(alpha, beta, lam, mu, t))
    tiny = np.finfo(np.float64).tiny
    return np.where((np.abs(d1 * t) < tiny) | (np.abs(d2 * t) < tiny),
                    d1 / d2, out)


def _bounded_part(d1, d2, sigma1, sigma2, tj):
    """Non-affine remainder of ln|H| at the stencil points tj.

    sigma1/sigma2 select the sinh form per term (decided at the stencil
    center and held fixed across the stencil).
    """
    v1 = np.abs(d1 * tj)
    v2 = np.abs(d2 * tj)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        g1 = np.where(sigma1, _log_sinhc(np.minimum(v1, 4.0) * 0.5), _log1mexp(np.maximum(v1, 0.5)))
        g2 = np.where(sigma2, _log_sinhc(np.minimum(v2, 4.0) * 0.5), _log1mexp(np.maximum(v2, 0.5)))
    return g1 - g2


def fd_log_deriv(alpha, beta, lam, mu, t, order, step):
    """Central finite differences of ln|H| with one Richardson pass.

    t entries must be nonzero and the stencil (t +- 2*step for orders 3, 4,
    t +- step otherwise) must stay on one side of 0; the caller checks.
    Returns (estimate, error_estimate) with error of order step^4.
    """
    if order not in (1, 2, 3, 4):
        raise ValueError(f"order must be in 1..4, got {order}")
    t = np.asarray(t, dtype=np.float64)
    h = np.broadcast_to(np.asarray(step, dtype=np.float64), t.shape)
    d1 = alpha - beta
    d2 = lam - mu
    s0 = beta - mu

    sigma1 = np.abs(d1 * t) <= 1.0
    sigma2 = np.abs(d2 * t) <= 1.0

    def g(offset):
        return _bounded_part(d1, d2, sigma1, sigma2, t + offset * h)

    if order <= 2:
        gp1, gm1, gp5, gm5 = g(1.0), g(-1.0), g(0.5), g(-0.5)
        if order == 1:
            e_h = (gp1 - gm1) / (2.0 * h)
            e_h2 = (gp5 - gm5) / h
        else:
            g0 = g(0.0)
            e_h = (gp1 - 2.0 * g0 + gm1) / (h * h)
            e_h2 = 4.0 * (gp5 - 2.0 * g0 + gm5) / (h * h)
    else:
        gp2, gm2, gp1, gm1 = g(2.0), g(-2.0), g(1.0), g(-1.0)
        gp5, gm5 = g(0.5), g(-0.5)
        if order == 3:
            h3 = h * h * h
            e_h = (gp2 - 2.0 * gp1 + 2.0 * gm1 - gm2) / (2.0 * h3)
            e_h2 = 8.0 * (gp1 - 2.0 * gp5 + 2.0 * gm5 - gm1) / (2.0 * h3)
        else:
            g0 = g(0.0)
            h4 = h * h * h * h
            e_h = (gp2 - 4.0 * gp1 + 6.0 * g0 - 4.0 * gm1 + gm2) / h4
            e_h2 = 16.0 * (gp1 - 4.0 * gp5 + 6.0 * g0 - 4.0 * gm5 + gm1) / h4

    est = (4.0 * e_h2 - e_h) / 3.0
    err = np.abs(e_h2 - e_h) / 3.0

    # exact derivatives of the pieces excluded from the stencil
    c_ln = sigma1.astype(np.float64) - sigma2.astype(np.float64)
    if order == 1:
        dln = 1.0 / t
        slope = (
            s0
            + np.where(sigma1, 0.5 * d1, np.where(d1 * t > 0.0, d1, 0.0))
            - np.where(sigma2, 0.5 * d2, np.where(d2 * t > 0.0, d2, 0.0))
        )
        est = est + c_ln * dln + slope
    elif order == 2:
        est = est - c_ln / (t * t)
    elif order == 3:
        est = est + 2.0 * c_ln / (t * t * t)
    else:
        est = est - 6.0 * c_ln / (t * t * t * t)
    return est, err
