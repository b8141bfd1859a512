"""Bipartite two-setting two-outcome no-signaling behaviors.

A behavior is the full conditional joint distribution p(ab|nu,mu) of the
simplest Bell experiment: Alice chooses setting nu in {0,1} and obtains
outcome a in {0,1}, Bob chooses mu and obtains b.  Tables are stored as a
(2,2,2,2) array indexed [nu, mu, a, b] and validated against positivity,
normalization, and the no-signaling conditions at construction time.
Signaling tables are rejected, never modeled.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    NegativeProbability,
    NotNormalized,
    SignalingDetected,
    ZeroWeightCondition,
)

DEFAULT_TOL = 1e-9

#: flat-16 layout used throughout the package: index = ((nu*2+mu)*2+a)*2+b
FLAT_SHAPE = (2, 2, 2, 2)

_JSON_KEYS = ("0,0", "0,1", "1,0", "1,1")


@dataclass(frozen=True)
class ConditionalState:
    """A remote-outcome-conditioned local state.

    side "A" means Alice's system conditioned on Bob obtaining `outcome`
    with setting `setting`; side "B" is the mirror image.  Zero-weight
    states are never constructed.
    """

    side: str
    setting: int
    outcome: int
    weight: float


@dataclass(frozen=True)
class Behavior:
    """A validated no-signaling behavior. Immutable; all methods are pure."""

    table: np.ndarray  # shape (2,2,2,2), read-only
    tol: float = DEFAULT_TOL

    # -- construction ------------------------------------------------------

    @classmethod
    def validate(cls, raw_table, tol: float = DEFAULT_TOL) -> "Behavior":
        """Validate 16 raw numbers and return a Behavior.

        Raises the first violated invariant: NegativeProbability,
        NotNormalized, or SignalingDetected, each carrying its residual.
        """
        p = np.asarray(raw_table, dtype=float)
        if p.size != 16:
            raise ValueError(f"expected 16 entries, got {p.size}")
        p = p.reshape(FLAT_SHAPE)

        bad = (p < -tol) | (p > 1 + tol)
        if bad.any():
            nu, mu, a, b = (int(i[0]) for i in np.nonzero(bad))
            raise NegativeProbability(nu, mu, a, b, p[nu, mu, a, b])

        norms = p.sum(axis=(2, 3))
        resid = np.abs(norms - 1.0)
        if (resid > tol).any():
            nu, mu = (int(i[0]) for i in np.nonzero(resid > tol))
            raise NotNormalized(nu, mu, float(norms[nu, mu] - 1.0))

        # Alice's marginal must not depend on mu, Bob's not on nu.
        pa = p.sum(axis=3)  # [nu, mu, a]
        da = pa[:, 0, :] - pa[:, 1, :]
        if (np.abs(da) > tol).any():
            nu, a = (int(i[0]) for i in np.nonzero(np.abs(da) > tol))
            raise SignalingDetected("A", a, nu, float(da[nu, a]))
        pb = p.sum(axis=2)  # [nu, mu, b]
        db = pb[0, :, :] - pb[1, :, :]
        if (np.abs(db) > tol).any():
            mu, b = (int(i[0]) for i in np.nonzero(np.abs(db) > tol))
            raise SignalingDetected("B", b, mu, float(db[mu, b]))

        p = p.copy()
        p.setflags(write=False)
        return cls(table=p, tol=tol)

    def flat(self) -> np.ndarray:
        """The table as a flat 16-vector (copy)."""
        return self.table.reshape(16).copy()

    # -- statistics --------------------------------------------------------

    def marginal_expectation(self, party: str, setting: int) -> float:
        """<A_nu> or <B_mu> in [-1, 1].

        The two remote-setting slices are averaged; non-signaling makes
        them equal up to float noise.
        """
        p = self.table
        if party == "A":
            slices = p[setting, :, :, :].sum(axis=2)  # [mu, a]
            return float((slices[:, 0] - slices[:, 1]).mean())
        if party == "B":
            slices = p[:, setting, :, :].sum(axis=1)  # [nu, b]
            return float((slices[:, 0] - slices[:, 1]).mean())
        raise ValueError(f"party must be 'A' or 'B', got {party!r}")

    def correlator(self, nu: int, mu: int) -> float:
        """C_{nu,mu} = sum_ab (-1)^(a+b) p(ab|nu,mu)."""
        p = self.table[nu, mu]
        return float(p[0, 0] - p[0, 1] - p[1, 0] + p[1, 1])

    def chsh(self) -> float:
        """CHSH functional sum (-1)^(a+b+mu*nu) p(ab|nu,mu), in [-4, 4]."""
        return float(
            self.correlator(0, 0)
            + self.correlator(0, 1)
            + self.correlator(1, 0)
            - self.correlator(1, 1)
        )

    def conditional_expectation(
        self, side: str, measured_setting: int, cond_setting: int, cond_outcome: int
    ) -> float:
        """Expectation of one local measurement in a remote-conditioned state.

        side "A": <A_nu> in the state prepared by Bob measuring mu=cond_setting
        with outcome b=cond_outcome; side "B" is the mirror.  The result is
        clamped to [-1, 1] to guard sqrt(1-e^2) against float overshoot.

        Raises ZeroWeightCondition when the conditioning probability is below
        tol: the conditional state is never prepared and must be skipped.
        """
        other = "B" if side == "A" else "A"
        weight = (1.0 + (-1) ** cond_outcome * self.marginal_expectation(other, cond_setting)) / 2.0
        if weight <= self.tol:
            raise ZeroWeightCondition(
                f"p({cond_outcome}|{cond_setting}) = {weight!r} on side {other}"
            )
        if side == "A":
            num = self.marginal_expectation("A", measured_setting) + (
                -1
            ) ** cond_outcome * self.correlator(measured_setting, cond_setting)
        else:
            num = self.marginal_expectation("B", measured_setting) + (
                -1
            ) ** cond_outcome * self.correlator(cond_setting, measured_setting)
        return float(np.clip(num / (2.0 * weight), -1.0, 1.0))

    def conditional_state_set(self, side: str) -> list[ConditionalState]:
        """The up-to-4 surviving remote-conditioned states for one side."""
        other = "B" if side == "A" else "A"
        states = []
        for setting in (0, 1):
            m = self.marginal_expectation(other, setting)
            for outcome in (0, 1):
                w = (1.0 + (-1) ** outcome * m) / 2.0
                if w > self.tol:
                    states.append(ConditionalState(side, setting, outcome, float(w)))
        return states

    # -- serialization -----------------------------------------------------

    def to_json(self) -> str:
        """Behavior JSON document; round-trips float literals exactly."""
        doc = {"p": {}, "tol": self.tol}
        for key in _JSON_KEYS:
            nu, mu = (int(c) for c in key.split(","))
            doc["p"][key] = [
                [float(self.table[nu, mu, 0, 0]), float(self.table[nu, mu, 0, 1])],
                [float(self.table[nu, mu, 1, 0]), float(self.table[nu, mu, 1, 1])],
            ]
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Behavior":
        doc = json.loads(text)
        tol = float(doc.get("tol", DEFAULT_TOL))
        p = np.empty(FLAT_SHAPE)
        try:
            for key in _JSON_KEYS:
                nu, mu = (int(c) for c in key.split(","))
                block = doc["p"][key]
                for a in (0, 1):
                    for b in (0, 1):
                        p[nu, mu, a, b] = float(block[a][b])
        except (KeyError, IndexError, TypeError) as exc:
            raise ValueError(f"malformed behavior document: {exc}") from exc
        return cls.validate(p, tol=tol)


# Thin functional aliases matching the operation names used elsewhere.

def validate(raw_table, tol: float = DEFAULT_TOL) -> Behavior:
    return Behavior.validate(raw_table, tol=tol)


def marginal_expectation(behavior: Behavior, party: str, setting: int) -> float:
    return behavior.marginal_expectation(party, setting)


def correlator(behavior: Behavior, nu: int, mu: int) -> float:
    return behavior.correlator(nu, mu)


def chsh(behavior: Behavior) -> float:
    return behavior.chsh()


def conditional_expectation(
    behavior: Behavior, side: str, measured_setting: int, cond_setting: int, cond_outcome: int
) -> float:
    return behavior.conditional_expectation(side, measured_setting, cond_setting, cond_outcome)


def conditional_state_set(behavior: Behavior, side: str) -> list[ConditionalState]:
    return behavior.conditional_state_set(side)
