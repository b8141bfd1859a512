"""No-disturbance-without-uncertainty measures, relation, and criterion.

The three theory-independent quantities for a sequential pair of sharp
measurements (first -> second):

* uncertainty(p)            sqrt(1 - sum_a p_a^2) of the first measurement
* disturbed_uncertainty(g)  unweighted sum, over the post-states of the
                            *second* measurement, of the first measurement's
                            uncertainty on those states
* disturbance(...)          total shift |p_direct - p_pushed| of the second
                            measurement's statistics caused by the first

and the relation  uncertainty * disturbed_uncertainty >= disturbance.

For two-outcome measurements the relation collapses to a quadratic in the
two expectations (e0, e1) and the single transfer parameter c, equivalent
to c lying in a per-state interval.  Demanding a common c across all
remote-conditioned states of a behavior yields the correlation criterion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .behavior import DEFAULT_TOL, Behavior
from .errors import DimensionMismatch


def _check_distribution(probs: np.ndarray, tol: float) -> np.ndarray:
    p = np.asarray(probs, dtype=float)
    if p.ndim != 1 or p.size < 2:
        raise ValueError("an outcome distribution needs n >= 2 entries")
    if (p < -tol).any() or (p > 1 + tol).any():
        raise ValueError(f"probabilities outside [0,1]: {p!r}")
    if abs(p.sum() - 1.0) > max(tol, 1e-9):
        raise ValueError(f"probabilities sum to {p.sum()!r}, not 1")
    return p


def uncertainty(probs, tol: float = DEFAULT_TOL) -> float:
    """sqrt(1 - sum p^2); zero iff the distribution is deterministic."""
    p = _check_distribution(probs, tol)
    return math.sqrt(max(1.0 - float(p @ p), 0.0))


def disturbed_uncertainty(gamma_reversed) -> float:
    """Sum of per-post-state uncertainties of the disturbed measurement.

    `gamma_reversed` is the transfer matrix of the *reversed* order:
    entry [a, a'] is the probability of outcome a for the first-listed
    measurement on the post-measurement state a' of the second-listed one.
    Each column is a distribution; the sum runs over columns unweighted.
    """
    g = np.asarray(gamma_reversed, dtype=float)
    if g.ndim != 2:
        raise ValueError("transfer matrix must be 2-D")
    col = 1.0 - (g * g).sum(axis=0)
    return float(np.sqrt(np.clip(col, 0.0, None)).sum())


def disturbance(p_second_direct, p_first, gamma) -> float:
    """Total-variation-style shift of the second measurement's statistics.

    gamma[a', a] is the probability of second-measurement outcome a' on the
    post-first-measurement state a.
    """
    q = np.asarray(p_second_direct, dtype=float)
    p = np.asarray(p_first, dtype=float)
    g = np.asarray(gamma, dtype=float)
    if g.shape != (q.size, p.size):
        raise DimensionMismatch(
            f"gamma shape {g.shape} incompatible with ({q.size}, {p.size})"
        )
    return float(np.abs(q - g @ p).sum())


def ndwu_relation_holds(delta: float, delta_disturbed: float, d: float,
                        tol: float = DEFAULT_TOL) -> bool:
    """delta * delta_disturbed >= d, up to tol."""
    return delta * delta_disturbed >= d - tol


def two_outcome_relation(e0: float, e1: float, c: float,
                         tol: float = DEFAULT_TOL) -> bool:
    """Two-outcome form: e0^2 + e1^2 + c^2 - 2 c e0 e1 <= 1."""
    return e0 * e0 + e1 * e1 + c * c - 2.0 * c * e0 * e1 <= 1.0 + tol


@dataclass(frozen=True)
class CInterval:
    """Feasible range of the transfer parameter c in one state."""

    lo: float
    hi: float

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, c: float, tol: float = DEFAULT_TOL) -> bool:
        return self.lo - tol <= c <= self.hi + tol


def c_interval(e0: float, e1: float) -> CInterval:
    """Interval of c values compatible with the two-outcome relation.

    [e0 e1 - sqrt(1-e0^2) sqrt(1-e1^2),  e0 e1 + sqrt(1-e0^2) sqrt(1-e1^2)],
    with inputs clamped to [-1, 1].
    """
    e0 = min(max(e0, -1.0), 1.0)
    e1 = min(max(e1, -1.0), 1.0)
    r = math.sqrt(max(1.0 - e0 * e0, 0.0)) * math.sqrt(max(1.0 - e1 * e1, 0.0))
    return CInterval(e0 * e1 - r, e0 * e1 + r)


# sentinels for a side with fewer than one surviving conditional state;
# genuine lhs/rhs values always lie in [-1, 1]
_VACUOUS_MAX = -2.0
_VACUOUS_MIN = 2.0


@dataclass(frozen=True)
class CriterionSide:
    max_lhs: float
    min_rhs: float
    skipped_states: int
    satisfied: bool

    def to_dict(self) -> dict:
        return {
            "max_lhs": self.max_lhs,
            "min_rhs": self.min_rhs,
            "satisfied": self.satisfied,
            "skipped_states": self.skipped_states,
        }


@dataclass(frozen=True)
class CriterionReport:
    side_a: CriterionSide
    side_b: CriterionSide
    overall: bool

    def to_dict(self) -> dict:
        return {
            "side_a": self.side_a.to_dict(),
            "side_b": self.side_b.to_dict(),
            "overall": self.overall,
        }


def _criterion_side(behavior: Behavior, side: str, tol: float) -> CriterionSide:
    max_lhs, min_rhs = _VACUOUS_MAX, _VACUOUS_MIN
    skipped = 0
    states = behavior.conditional_state_set(side)
    skipped = 4 - len(states)
    for st in states:
        e0 = behavior.conditional_expectation(side, 0, st.setting, st.outcome)
        e1 = behavior.conditional_expectation(side, 1, st.setting, st.outcome)
        iv = c_interval(e0, e1)
        max_lhs = max(max_lhs, iv.lo)
        min_rhs = min(min_rhs, iv.hi)
    return CriterionSide(max_lhs, min_rhs, skipped, max_lhs <= min_rhs + tol)


def criterion(behavior: Behavior, tol: float | None = None) -> CriterionReport:
    """Does a common transfer parameter c exist across all conditional states?

    Per side, max over surviving states of the c-interval lower end must not
    exceed the min of the upper ends; fewer than two survivors make a side
    vacuously satisfied.  Boundary equality counts as satisfied (+tol).
    """
    if tol is None:
        tol = behavior.tol
    side_a = _criterion_side(behavior, "A", tol)
    side_b = _criterion_side(behavior, "B", tol)
    return CriterionReport(side_a, side_b, side_a.satisfied and side_b.satisfied)
