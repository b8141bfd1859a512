"""The no-signaling box zoo for the 2x2x2x2 Bell scenario.

Eight extremal nonlocal boxes (p = 1/2 iff a+b = nu*mu + t*nu + s*mu + l
mod 2), sixteen local deterministic boxes (a = t*nu + s, b = l*mu + v mod 2),
the three-parameter noisy mixture family, and the almost-quantum point that
the correlation criterion singles out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .behavior import DEFAULT_TOL, Behavior
from .errors import BadWeights, InvalidFamilyPoint


def nonlocal_box(t: int, s: int, l: int, tol: float = DEFAULT_TOL) -> Behavior:
    """Extremal nonlocal box labeled by (t, s, l) in {0,1}^3."""
    p = np.zeros((2, 2, 2, 2))
    for nu in (0, 1):
        for mu in (0, 1):
            for a in (0, 1):
                b = (a + nu * mu + t * nu + s * mu + l) % 2
                p[nu, mu, a, b] = 0.5
    return Behavior.validate(p, tol=tol)


def local_box(t: int, s: int, l: int, v: int, tol: float = DEFAULT_TOL) -> Behavior:
    """Local deterministic box: a = t*nu + s, b = l*mu + v (mod 2)."""
    p = np.zeros((2, 2, 2, 2))
    for nu in (0, 1):
        for mu in (0, 1):
            p[nu, mu, (t * nu + s) % 2, (l * mu + v) % 2] = 1.0
    return Behavior.validate(p, tol=tol)


def pr_box(tol: float = DEFAULT_TOL) -> Behavior:
    return nonlocal_box(0, 0, 0, tol=tol)


def pr_prime_box(tol: float = DEFAULT_TOL) -> Behavior:
    return nonlocal_box(0, 1, 0, tol=tol)


def uniform_box(tol: float = DEFAULT_TOL) -> Behavior:
    return Behavior.validate(np.full(16, 0.25), tol=tol)


def all_local_boxes() -> list[Behavior]:
    return [local_box(t, s, l, v)
            for t in (0, 1) for s in (0, 1) for l in (0, 1) for v in (0, 1)]


def all_nonlocal_boxes() -> list[Behavior]:
    return [nonlocal_box(t, s, l) for t in (0, 1) for s in (0, 1) for l in (0, 1)]


def extremal_vertices() -> np.ndarray:
    """(24, 16) array: 16 local deterministic rows then 8 nonlocal rows."""
    rows = [b.flat() for b in all_local_boxes()] + [b.flat() for b in all_nonlocal_boxes()]
    return np.array(rows)


@dataclass(frozen=True)
class FamilyPoint:
    """Mixing weights (alpha, beta, tau) of the noisy nonlocal family."""

    alpha: float
    beta: float
    tau: float

    def __post_init__(self):
        if min(self.alpha, self.beta, self.tau) < 0:
            raise InvalidFamilyPoint(f"negative weight in {self}")
        if self.alpha + self.beta + self.tau > 1 + 1e-12:
            raise InvalidFamilyPoint(f"weights exceed the simplex: {self}")


def family_table(alpha, beta, tau) -> np.ndarray:
    """Flat-16 table(s) of the noisy family; accepts scalars or arrays.

    Built from the affine form p = [1 + (-1)^a tau + (-1)^b tau
    + (-1)^(a+b) C_numu] / 4 with C_numu = (-1)^(nu mu)(alpha + (-1)^mu beta) + tau,
    which equals the four-component mixture entrywise.
    """
    alpha, beta, tau = np.broadcast_arrays(
        np.asarray(alpha, float), np.asarray(beta, float), np.asarray(tau, float)
    )
    shape = alpha.shape
    out = np.empty(shape + (16,))
    for nu in (0, 1):
        for mu in (0, 1):
            c = (-1) ** (nu * mu) * (alpha + (-1) ** mu * beta) + tau
            for a in (0, 1):
                for b in (0, 1):
                    idx = ((nu * 2 + mu) * 2 + a) * 2 + b
                    out[..., idx] = (
                        1.0 + (-1) ** a * tau + (-1) ** b * tau + (-1) ** (a + b) * c
                    ) / 4.0
    return out


def noisy_family(point: FamilyPoint, tol: float = DEFAULT_TOL) -> Behavior:
    """alpha*PR + beta*PR' + tau*L + (1-alpha-beta-tau)*I/4."""
    return Behavior.validate(
        family_table(point.alpha, point.beta, point.tau), tol=tol
    )


def mix(behaviors: list[Behavior], weights, tol: float = DEFAULT_TOL) -> Behavior:
    """Entrywise convex combination."""
    w = np.asarray(weights, dtype=float)
    if w.size != len(behaviors):
        raise BadWeights(f"{w.size} weights for {len(behaviors)} behaviors")
    if (w < -tol).any() or abs(w.sum() - 1.0) > max(tol, 1e-9):
        raise BadWeights(f"weights must be nonnegative and sum to 1, got {w!r}")
    table = sum(wi * b.table for wi, b in zip(w, behaviors))
    return Behavior.validate(table, tol=tol)


def max_chsh_over_relabelings(behavior: Behavior) -> float:
    """max over local setting/outcome relabelings of |CHSH|.

    Equivalent to max over (t, s) of |sum (-1)^(a+b+nu*mu+t*nu+s*mu) p|.
    """
    c = np.array([[behavior.correlator(nu, mu) for mu in (0, 1)] for nu in (0, 1)])
    best = 0.0
    for t in (0, 1):
        for s in (0, 1):
            val = sum(
                (-1) ** (nu * mu + t * nu + s * mu) * c[nu, mu]
                for nu in (0, 1) for mu in (0, 1)
            )
            best = max(best, abs(val))
    return float(best)


# eight observable-value probabilities of the almost-quantum point, in the
# order (A0, A1, B0, B1, A0B0, A1B0, A0B1, A1B1), each for outcome 1
_AQC_SINGLES = (9 / 20, 2 / 11, 2 / 11, 9 / 20)
_AQC_JOINTS = {
    (0, 0): 22 / 125,
    (1, 0): math.sqrt(2) / 9,
    (0, 1): 37 / 700,
    (1, 1): 22 / 125,
}


def aqc_behavior(swap_joint_order: bool = False, tol: float = DEFAULT_TOL) -> Behavior:
    """The almost-quantum point, reconstructed from its eight probabilities.

    <X> = 1 - 2 p(X=1) and <A B> = 1 - 2 p(a=1) - 2 p(b=1) + 4 p(11), then
    the affine table formula.  `swap_joint_order` exchanges the (1,0) and
    (0,1) joint entries; it exists purely as a diagnostic.
    """
    pa1 = _AQC_SINGLES[0:2]
    pb1 = _AQC_SINGLES[2:4]
    joints = dict(_AQC_JOINTS)
    if swap_joint_order:
        joints[(1, 0)], joints[(0, 1)] = joints[(0, 1)], joints[(1, 0)]
    ea = [1 - 2 * x for x in pa1]
    eb = [1 - 2 * x for x in pb1]
    p = np.empty((2, 2, 2, 2))
    for nu in (0, 1):
        for mu in (0, 1):
            c = 1 - 2 * pa1[nu] - 2 * pb1[mu] + 4 * joints[(nu, mu)]
            for a in (0, 1):
                for b in (0, 1):
                    p[nu, mu, a, b] = (
                        1 + (-1) ** a * ea[nu] + (-1) ** b * eb[mu] + (-1) ** (a + b) * c
                    ) / 4
    return Behavior.validate(p, tol=tol)
