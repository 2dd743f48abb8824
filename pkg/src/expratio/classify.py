"""Closed-form classification of monotonicity and log-convexity.

The monotonicity calculus is a table of sign conditions on the five
invariants

    A = (a-b)(a+b-l-m)          B = (a-b)(a+b-|a-b|-2l)
    C = (a-b)(a+b+|a-b|-2l)     D = (a-b)(a+b+|a-b|-2m)
    E = (a-b)(a+b-|a-b|-2m)

(with (a, b, l, m) the four exponents), plus the ordering of l and m.
Each (interval, direction) pair has exactly two qualifying branches, one
per ordering; the decision table emitter and the verdict logic share the
same branch encoding so they cannot diverge.

Useful algebraic facts, relied on by the consistency checks:
C - B = D - E = 2 (a-b)|a-b|, and B + D = C + E = 2A, so the whole-line
conditions imply both half-line conditions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .params import HParams, PParams, QParams

__all__ = [
    "Interval",
    "Direction",
    "ConvexityKind",
    "ThirdOrderKind",
    "InvariantSet",
    "FrakInvariantSet",
    "MonotonicityVerdict",
    "ConvexityVerdict",
    "ThirdOrderVerdict",
    "ClassificationReport",
    "QReport",
    "compute_invariants",
    "compute_frak_invariants",
    "zero_band_width",
    "classify_monotonicity_H",
    "classify_log_convexity_H",
    "classify_3log_H",
    "classify_H",
    "classify_P",
    "classify_monotonicity_Q",
    "classify_Q",
    "decision_table",
    "TableRow",
]

ZERO_BAND_EPS = 1e-12


class Interval(Enum):
    POSITIVE_HALF_LINE = "(0,inf)"
    NEGATIVE_HALF_LINE = "(-inf,0)"
    WHOLE_LINE = "(-inf,inf)"


class Direction(Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    NON_MONOTONIC = "non-monotonic"


class ConvexityKind(Enum):
    LOG_CONVEX = "log-convex"
    LOG_CONCAVE = "log-concave"
    LOG_AFFINE = "log-affine"
    NOT_COVERED = "not-covered"


class ThirdOrderKind(Enum):
    CONVEX_POS_CONCAVE_NEG = "3-log-convex on (0,inf), 3-log-concave on (-inf,0)"
    CONCAVE_POS_CONVEX_NEG = "3-log-concave on (0,inf), 3-log-convex on (-inf,0)"
    NOT_COVERED = "not-covered"


@dataclass(frozen=True)
class InvariantSet:
    A: float
    B: float
    C: float
    D: float
    E: float

    def get(self, name: str) -> float:
        return getattr(self, name)

    def as_dict(self) -> dict[str, float]:
        return {k: getattr(self, k) for k in "ABCDE"}


@dataclass(frozen=True)
class FrakInvariantSet(InvariantSet):
    """Same five quantities expressed through the logarithms of (r,s,u,v)."""


@dataclass(frozen=True)
class MonotonicityVerdict:
    direction: Direction
    fired_conditions: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class ConvexityVerdict:
    kind: ConvexityKind
    ratio: float
    exponent: float | None = None  # set for the log-affine case: H = e^{exponent * t}


@dataclass(frozen=True)
class ThirdOrderVerdict:
    kind: ThirdOrderKind
    sufficient_only: bool = True


@dataclass(frozen=True)
class ClassificationReport:
    invariants: InvariantSet
    monotonicity: dict[Interval, MonotonicityVerdict]
    convexity: ConvexityVerdict
    third_order: ThirdOrderVerdict
    zero_band_hits: tuple[str, ...] = ()
    frak_invariants: FrakInvariantSet | None = None


@dataclass(frozen=True)
class QReport:
    monotonicity: dict[Interval, MonotonicityVerdict]
    log_convex: bool
    log_concave: bool
    third_order: ThirdOrderVerdict
    zero_band_hits: tuple[str, ...] = ()


def compute_invariants(params: HParams) -> InvariantSet:
    a, b, l, m = params.as_tuple()
    d = a - b
    ad = abs(d)
    return InvariantSet(
        A=d * (a + b - l - m),
        B=d * (a + b - ad - 2.0 * l),
        C=d * (a + b + ad - 2.0 * l),
        D=d * (a + b + ad - 2.0 * m),
        E=d * (a + b - ad - 2.0 * m),
    )


def compute_frak_invariants(params: PParams) -> FrakInvariantSet:
    r, s, u, v = params.r, params.s, params.u, params.v
    lr_s = math.log(r / s)
    alr_s = abs(lr_s)
    return FrakInvariantSet(
        A=math.log(r * s / (u * v)) * lr_s,
        B=(math.log(r * s / (u * u)) - alr_s) * lr_s,
        C=(math.log(r * s / (u * u)) + alr_s) * lr_s,
        D=(math.log(r * s / (v * v)) + alr_s) * lr_s,
        E=(math.log(r * s / (v * v)) - alr_s) * lr_s,
    )


def zero_band_width(params: HParams) -> float:
    """Half-width of the ambiguity band for invariant sign tests."""
    scale = max(1.0, abs(params.alpha), abs(params.beta), abs(params.lam), abs(params.mu))
    return ZERO_BAND_EPS * scale * scale


# Branch encoding shared by the verdict logic and the table emitter.
# The conditions come from reducing H to the two-exponent form Q via
# w = (lambda - mu) t: for lambda < mu that substitution reverses
# orientation, so the half-line rows pair A with D on (0,inf) and with B
# on (-inf,0) in the lambda < mu branches (the whole-line rows use both
# and are orientation-blind).
# Each branch: (ordering, ((invariant, ">=0"/"<=0"), (invariant, ...))),
# ordering "gt" meaning lambda > mu.  Branch order within each entry follows
# the published decision table row order.
_BRANCHES: dict[tuple[Interval, Direction], tuple] = {
    (Interval.POSITIVE_HALF_LINE, Direction.INCREASING): (
        ("gt", (("A", ">=0"), ("C", ">=0"))),
        ("lt", (("A", "<=0"), ("D", "<=0"))),
    ),
    (Interval.POSITIVE_HALF_LINE, Direction.DECREASING): (
        ("lt", (("A", ">=0"), ("D", ">=0"))),
        ("gt", (("A", "<=0"), ("C", "<=0"))),
    ),
    (Interval.NEGATIVE_HALF_LINE, Direction.INCREASING): (
        ("gt", (("A", ">=0"), ("E", ">=0"))),
        ("lt", (("A", "<=0"), ("B", "<=0"))),
    ),
    (Interval.NEGATIVE_HALF_LINE, Direction.DECREASING): (
        ("gt", (("A", "<=0"), ("E", "<=0"))),
        ("lt", (("A", ">=0"), ("B", ">=0"))),
    ),
    (Interval.WHOLE_LINE, Direction.INCREASING): (
        ("gt", (("C", ">=0"), ("E", ">=0"))),
        ("lt", (("B", "<=0"), ("D", "<=0"))),
    ),
    (Interval.WHOLE_LINE, Direction.DECREASING): (
        ("gt", (("C", "<=0"), ("E", "<=0"))),
        ("lt", (("B", ">=0"), ("D", ">=0"))),
    ),
}


def _branch_holds(inv: InvariantSet, ordering: str, conds, lam_gt_mu: bool, band: float):
    """(holds, hits): sign tests with the zero band; hits lists invariants
    whose value fell inside the band."""
    if (ordering == "gt") != lam_gt_mu:
        return False, []
    hits = []
    for name, sign in conds:
        x = inv.get(name)
        if abs(x) < band:
            hits.append(name)
        if sign == ">=0":
            if not (x >= -band):
                return False, hits
        else:
            if not (x <= band):
                return False, hits
    return True, hits


def _classify_monotonicity(inv: InvariantSet, lam_gt_mu: bool, interval: Interval, band: float):
    fired: list[tuple[str, str]] = []
    hits: list[str] = []
    direction = Direction.NON_MONOTONIC
    for want in (Direction.INCREASING, Direction.DECREASING):
        for ordering, conds in _BRANCHES[(interval, want)]:
            holds, h = _branch_holds(inv, ordering, conds, lam_gt_mu, band)
            hits.extend(h)
            if holds and direction == Direction.NON_MONOTONIC:
                direction = want
                fired = [("lambda>mu" if ordering == "gt" else "lambda<mu", "")] + list(conds)
    return MonotonicityVerdict(direction, tuple(fired)), hits


def classify_monotonicity_H(params: HParams, interval: Interval) -> MonotonicityVerdict:
    inv = compute_invariants(params)
    verdict, _ = _classify_monotonicity(inv, params.lam > params.mu, interval, zero_band_width(params))
    return verdict


def classify_log_convexity_H(params: HParams) -> ConvexityVerdict:
    ratio = (params.alpha - params.beta) / (params.lam - params.mu)
    if ratio == 1.0:
        # H(t) = e^{(beta-mu) t} exactly
        return ConvexityVerdict(ConvexityKind.LOG_AFFINE, ratio, exponent=params.beta - params.mu)
    if ratio > 1.0:
        return ConvexityVerdict(ConvexityKind.LOG_CONVEX, ratio)
    if 0.0 < ratio < 1.0:
        return ConvexityVerdict(ConvexityKind.LOG_CONCAVE, ratio)
    return ConvexityVerdict(ConvexityKind.NOT_COVERED, ratio)


def classify_3log_H(params: HParams) -> ThirdOrderVerdict:
    # Reduction to the two-exponent form: (ln H)'''(t) = (lam-mu)^3 times
    # the third log-derivative of Q at w = (lam-mu)t.  The odd power flips
    # the sign exactly when the substitution flips the half-lines, so the
    # two effects cancel and the verdict depends on the ratio alone.
    ratio = (params.alpha - params.beta) / (params.lam - params.mu)
    if 0.0 < ratio < 1.0:
        return ThirdOrderVerdict(ThirdOrderKind.CONVEX_POS_CONCAVE_NEG)
    if ratio > 1.0:
        return ThirdOrderVerdict(ThirdOrderKind.CONCAVE_POS_CONVEX_NEG)
    return ThirdOrderVerdict(ThirdOrderKind.NOT_COVERED)


def classify_H(params: HParams) -> ClassificationReport:
    inv = compute_invariants(params)
    band = zero_band_width(params)
    lam_gt_mu = params.lam > params.mu
    mono = {}
    hits: list[str] = []
    for interval in Interval:
        verdict, h = _classify_monotonicity(inv, lam_gt_mu, interval, band)
        mono[interval] = verdict
        hits.extend(h)
    seen = tuple(dict.fromkeys(hits))
    return ClassificationReport(
        invariants=inv,
        monotonicity=mono,
        convexity=classify_log_convexity_H(params),
        third_order=classify_3log_H(params),
        zero_band_hits=seen,
    )


def classify_P(params: PParams) -> ClassificationReport:
    """Classify the positive-base ratio: identical calculus via logarithms,
    with the invariants also reported in their base form."""
    report = classify_H(params.log_params())
    return ClassificationReport(
        invariants=report.invariants,
        monotonicity=report.monotonicity,
        convexity=report.convexity,
        third_order=report.third_order,
        zero_band_hits=report.zero_band_hits,
        frak_invariants=compute_frak_invariants(params),
    )


# ---------------------------------------------------------------------------
# two-exponent function Q

def _q_invariants(params: QParams) -> dict[str, float]:
    a, b = params.alpha, params.beta
    d = b - a
    ad = abs(a - b)
    return {
        "q1": d * (1.0 - a - b),
        "q2": d * (ad - a - b),
        "q3": d * (2.0 - ad - a - b),
    }


_Q_CONDITIONS = {
    Interval.POSITIVE_HALF_LINE: ("q1", "q2"),
    Interval.NEGATIVE_HALF_LINE: ("q1", "q3"),
    Interval.WHOLE_LINE: ("q2", "q3"),
}


def classify_monotonicity_Q(params: QParams, interval: Interval) -> MonotonicityVerdict:
    qi = _q_invariants(params)
    scale = max(1.0, abs(params.alpha), abs(params.beta))
    band = ZERO_BAND_EPS * scale * scale
    names = _Q_CONDITIONS[interval]
    if all(qi[n] >= -band for n in names):
        return MonotonicityVerdict(Direction.INCREASING, tuple((n, ">=0") for n in names))
    if all(qi[n] <= band for n in names):
        return MonotonicityVerdict(Direction.DECREASING, tuple((n, "<=0") for n in names))
    return MonotonicityVerdict(Direction.NON_MONOTONIC)


def classify_Q(params: QParams) -> QReport:
    d = params.beta - params.alpha
    scale = max(1.0, abs(params.alpha), abs(params.beta))
    band = ZERO_BAND_EPS * scale * scale
    qi = _q_invariants(params)
    hits = tuple(n for n, x in qi.items() if abs(x) < band)
    if 0.0 < d < 1.0:
        third = ThirdOrderVerdict(ThirdOrderKind.CONVEX_POS_CONCAVE_NEG)
    elif d > 1.0:
        third = ThirdOrderVerdict(ThirdOrderKind.CONCAVE_POS_CONVEX_NEG)
    else:
        third = ThirdOrderVerdict(ThirdOrderKind.NOT_COVERED)
    return QReport(
        monotonicity={iv: classify_monotonicity_Q(params, iv) for iv in Interval},
        log_convex=d > 1.0,
        log_concave=0.0 < d < 1.0,
        third_order=third,
        zero_band_hits=hits,
    )


# ---------------------------------------------------------------------------
# decision table

@dataclass(frozen=True)
class TableRow:
    interval: str
    direction: str
    constraints: dict[str, str]  # invariant -> ">=0"/"<=0" (absent: no constraint)
    ordering: str  # "lambda>mu" or "lambda<mu"

    def csv_cells(self) -> list[str]:
        return [
            self.interval,
            self.direction,
            *(self.constraints.get(k, "") for k in "ABCDE"),
            self.ordering,
        ]


def decision_table() -> list[TableRow]:
    """The twelve-row monotonicity decision table, generated from the same
    branch encoding the classifier evaluates."""
    rows = []
    for interval in (Interval.POSITIVE_HALF_LINE, Interval.NEGATIVE_HALF_LINE, Interval.WHOLE_LINE):
        for direction in (Direction.INCREASING, Direction.DECREASING):
            for ordering, conds in _BRANCHES[(interval, direction)]:
                rows.append(
                    TableRow(
                        interval=interval.value,
                        direction=direction.value,
                        constraints={name: sign for name, sign in conds},
                        ordering="lambda>mu" if ordering == "gt" else "lambda<mu",
                    )
                )
    return rows
