"""Evaluators for the ratio family and the closed-form log-derivatives.

Scalar entry points live here; grid evaluation is delegated to the kernel
backend (compiled if available).  The log-derivative closed forms are built
on the auxiliary function

    psi(x) = 1/(1 - e^{-x}) - 1/x

whose derivatives carry all the non-affine structure of ln|H|:

    (ln|H|)'   = (beta - mu) + d1*psi(d1 t) - d2*psi(d2 t)
    (ln|H|)''  = d1^2 psi'(d1 t) - d2^2 psi'(d2 t)
    (ln|H|)''' = d1^3 psi''(d1 t) - d2^3 psi''(d2 t)

with d1 = alpha - beta, d2 = lambda - mu.  The 1/t poles of the individual
terms cancel between numerator and denominator, so these formulas are
regular at t = 0 once psi is evaluated by series near the origin.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .params import GFParams, HParams, ParameterError, PParams, QParams, QReduction, SignedLogValue

__all__ = [
    "EvalOptions",
    "eval_G",
    "eval_F",
    "eval_Q",
    "eval_H",
    "eval_P",
    "eval_H_grid",
    "eval_Q_grid",
    "eval_P_grid",
    "log_abs_H_grid",
    "eval_H_signed_log",
    "log_deriv_H",
    "reduce_H_to_Q",
]


@dataclass(frozen=True)
class EvalOptions:
    """Evaluation knobs.

    taylor_threshold = 0 means the evaluators always use the factorized
    expm1/signed-log path, which is uniformly accurate; the knob exists so
    callers can force a series branch if they ever need bit-stable output
    near 0.  rel_tol is the accuracy target the evaluators are designed to,
    used by consumers when comparing routes.
    """

    taylor_threshold: float = 0.0
    rel_tol: float = 1e-12

    def __post_init__(self):
        if not (self.taylor_threshold >= 0.0):
            raise ParameterError("EvalOptions: taylor_threshold must be >= 0")
        if not (0.0 < self.rel_tol < 1.0):
            raise ParameterError("EvalOptions: rel_tol must be in (0, 1)")


def _check_t(t: float) -> float:
    t = float(t)
    if not math.isfinite(t):
        raise ParameterError(f"t must be finite, got {t}")
    return t


# ---------------------------------------------------------------------------
# scalar helpers (twins of the kernel internals, math-module based)

def _log_sinhc(y: float) -> float:
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
    return math.log1p(w)


def _log1mexp(v: float) -> float:
    # ln(1 - e^{-v}), v > 0
    if v < 0.6931471805599453:
        return math.log(-math.expm1(-v))
    return math.log1p(-math.exp(-v))


def _ln_abs_expm1(x: float) -> float:
    ax = abs(x)
    if ax < 1.0:
        if ax == 0.0:
            return -math.inf
        return math.log(ax) + 0.5 * x + _log_sinhc(0.5 * ax)
    if x > 0.0:
        return x + _log1mexp(x)
    return _log1mexp(ax)


def _saturating_exp(sign: float, log_mag: float) -> float:
    if log_mag > 709.0:
        return sign * math.inf
    return sign * math.exp(log_mag)


# ---------------------------------------------------------------------------
# evaluators

def eval_G(params: GFParams, t: float, options: EvalOptions | None = None) -> float:
    """(b^t - a^t) / t, continued by ln b - ln a at t = 0."""
    params.require_g()
    t = _check_t(t)
    la = math.log(params.a)
    lb = math.log(params.b)
    x = t * (lb - la)
    # t == 0, or so small that x is subnormal and has lost precision: limit
    if abs(x) < sys.float_info.min:
        return lb - la
    if abs(t * la) < 690.0 and abs(x) < 690.0:
        return math.exp(t * la) * math.expm1(x) / t
    return _saturating_exp(1.0, t * la + _ln_abs_expm1(x) - math.log(abs(t)))


def eval_F(params: GFParams, t: float, options: EvalOptions | None = None) -> float:
    """t / (e^{bt} - e^{at}), continued by 1/(b - a) at t = 0."""
    t = _check_t(t)
    a, b = params.a, params.b
    d = b - a
    if abs(d * t) < sys.float_info.min:
        return 1.0 / (b - a)
    if abs(a * t) < 690.0 and abs(d * t) < 690.0:
        return t * math.exp(-a * t) / math.expm1(d * t)
    sign = 1.0 if d > 0.0 else -1.0
    return _saturating_exp(sign, math.log(abs(t)) - a * t - _ln_abs_expm1(d * t))


def eval_Q(params: QParams, t: float, options: EvalOptions | None = None) -> float:
    """(e^{-alpha t} - e^{-beta t}) / (1 - e^{-t}), continued by beta - alpha."""
    t = _check_t(t)
    hp = params.h_params()
    return float(kernels.eval_h(hp.alpha, hp.beta, hp.lam, hp.mu, np.array([t]))[0])


def eval_H(params: HParams, t: float, options: EvalOptions | None = None) -> float:
    """(e^{alpha t} - e^{beta t}) / (e^{lambda t} - e^{mu t}).

    At t = 0 returns the continuity limit (alpha - beta)/(lambda - mu).
    Saturates to +-inf / 0 instead of overflowing.
    """
    t = _check_t(t)
    if t == 0.0:
        return (params.alpha - params.beta) / (params.lam - params.mu)
    return float(kernels.eval_h(params.alpha, params.beta, params.lam, params.mu, np.array([t]))[0])


def eval_P(params: PParams, t: float, options: EvalOptions | None = None) -> float:
    """(r^t - s^t) / (u^t - v^t), continued by (ln r - ln s)/(ln u - ln v)."""
    return eval_H(params.log_params(), t, options)


def eval_H_grid(params: HParams, t) -> np.ndarray:
    """Vectorized eval_H over an array of t values."""
    t = np.asarray(t, dtype=np.float64)
    if not np.all(np.isfinite(t)):
        raise ParameterError("t grid must be finite")
    return np.asarray(kernels.eval_h(params.alpha, params.beta, params.lam, params.mu, t))


def eval_Q_grid(params: QParams, t) -> np.ndarray:
    return eval_H_grid(params.h_params(), t)


def eval_P_grid(params: PParams, t) -> np.ndarray:
    return eval_H_grid(params.log_params(), t)


def log_abs_H_grid(params: HParams, t) -> np.ndarray:
    """ln|H(t)| over an array of t values (overflow-free)."""
    t = np.asarray(t, dtype=np.float64)
    if not np.all(np.isfinite(t)):
        raise ParameterError("t grid must be finite")
    return np.asarray(kernels.log_abs_h(params.alpha, params.beta, params.lam, params.mu, t))


def eval_H_signed_log(params: HParams, t: float) -> SignedLogValue:
    """H(t) as a signed-log value; exact even far outside float range."""
    t = _check_t(t)
    d1 = params.alpha - params.beta
    d2 = params.lam - params.mu
    sign = 1 if d1 * d2 > 0.0 else -1
    log_mag = float(kernels.log_abs_h(params.alpha, params.beta, params.lam, params.mu, np.array([t]))[0])
    return SignedLogValue(sign, log_mag)


# ---------------------------------------------------------------------------
# closed-form logarithmic derivatives

def _psi(x: float) -> float:
    """1/(1 - e^{-x}) - 1/x, extended by 1/2 at x = 0."""
    ax = abs(x)
    if ax <= 0.5:
        x2 = x * x
        return 0.5 + x * (
            1.0 / 12.0
            + x2 * (-1.0 / 720.0 + x2 * (1.0 / 30240.0 + x2 * (-1.0 / 1209600.0 + x2 / 47900160.0)))
        )
    if ax <= 700.0:
        return 1.0 / (-math.expm1(-x)) - 1.0 / x
    return (1.0 if x > 0.0 else 0.0) - 1.0 / x


def _psi_d1(x: float) -> float:
    """First derivative of _psi: 1/x^2 - 1/(4 sinh^2(x/2))."""
    ax = abs(x)
    if ax <= 0.5:
        x2 = x * x
        return 1.0 / 12.0 + x2 * (
            -1.0 / 240.0 + x2 * (1.0 / 6048.0 + x2 * (-1.0 / 172800.0 + x2 / 5322240.0))
        )
    if ax <= 40.0:
        s = math.sinh(0.5 * x)
        return 1.0 / (x * x) - 1.0 / (4.0 * s * s)
    return 1.0 / (x * x)


def _psi_d2(x: float) -> float:
    """Second derivative of _psi: -2/x^3 + cosh(x/2)/(4 sinh^3(x/2))."""
    ax = abs(x)
    if ax <= 0.5:
        x2 = x * x
        return x * (
            -1.0 / 120.0 + x2 * (1.0 / 1512.0 + x2 * (-1.0 / 28800.0 + x2 / 665280.0))
        )
    if ax <= 40.0:
        s = math.sinh(0.5 * x)
        return -2.0 / (x * x * x) + math.cosh(0.5 * x) / (4.0 * s * s * s)
    return -2.0 / (x * x * x)


def log_deriv_H(params: HParams, t: float, order: int) -> float:
    """order-th derivative of ln|H| at t, in closed form.

    Regular at t = 0 (the individual 1/t^k poles cancel); at t = 0 the
    values are (alpha+beta-lambda-mu)/2, (d1^2 - d2^2)/12 and 0 for orders
    1, 2, 3.
    """
    if order not in (1, 2, 3):
        raise ParameterError(f"log_deriv_H: order must be 1, 2 or 3, got {order}")
    t = _check_t(t)
    d1 = params.alpha - params.beta
    d2 = params.lam - params.mu
    if order == 1:
        return (params.beta - params.mu) + d1 * _psi(d1 * t) - d2 * _psi(d2 * t)
    if order == 2:
        return d1 * d1 * _psi_d1(d1 * t) - d2 * d2 * _psi_d1(d2 * t)
    return d1 ** 3 * _psi_d2(d1 * t) - d2 ** 3 * _psi_d2(d2 * t)


def reduce_H_to_Q(params: HParams) -> QReduction:
    """Rewrite H as Q_{A,B}(w) with w = (lambda - mu) t.

    A = (alpha-lambda)/(mu-lambda), B = (beta-lambda)/(mu-lambda).  When
    (A, B) lands on {(0,1), (1,0)} the two-exponent form is degenerate (H
    is then a pure exponential) and the reduction is flagged.
    """
    A = (params.alpha - params.lam) / (params.mu - params.lam)
    B = (params.beta - params.lam) / (params.mu - params.lam)
    w_scale = params.lam - params.mu
    degenerate = (A, B) in ((0.0, 1.0), (1.0, 0.0))
    return QReduction(A=A, B=B, w_scale=w_scale, degenerate=degenerate)
