import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ndwu_lab import boxes
from ndwu_lab.behavior import Behavior
from ndwu_lab.errors import (
    NegativeProbability,
    NotNormalized,
    SignalingDetected,
    ZeroWeightCondition,
)


def _mixture(weights: np.ndarray) -> Behavior:
    table = (weights / weights.sum()) @ boxes.extremal_vertices()
    return Behavior.validate(table.reshape(2, 2, 2, 2))


weights_st = st.lists(
    st.floats(0.0, 1.0, allow_nan=False), min_size=24, max_size=24
).filter(lambda w: sum(w) > 1e-6).map(np.array)


def test_validate_rejects_negative_entries():
    table = np.full((2, 2, 2, 2), 0.25)
    table[0, 0, 0, 0] = -0.1
    table[0, 0, 1, 1] = 0.6
    with pytest.raises(NegativeProbability):
        Behavior.validate(table)


def test_validate_rejects_bad_normalization():
    table = np.full((2, 2, 2, 2), 0.25)
    table[1, 0] *= 0.5
    with pytest.raises(NotNormalized) as exc:
        Behavior.validate(table)
    assert exc.value.setting == (1, 0)


def test_validate_rejects_signaling():
    # B's marginal under mu=0 depends on nu
    table = np.zeros((2, 2, 2, 2))
    table[0, 0, 0, 0] = 1.0
    table[1, 0, 0, 1] = 1.0
    table[0, 1, 0, 0] = 1.0
    table[1, 1, 0, 0] = 1.0
    with pytest.raises(SignalingDetected):
        Behavior.validate(table)


def test_pr_box_moments():
    pr = boxes.pr_box()
    assert pr.marginal_expectation("A", 0) == pytest.approx(0.0)
    assert pr.marginal_expectation("B", 1) == pytest.approx(0.0)
    for nu in (0, 1):
        for mu in (0, 1):
            want = -1.0 if nu == mu == 1 else 1.0
            assert pr.correlator(nu, mu) == pytest.approx(want)
    assert pr.chsh() == pytest.approx(4.0)


def test_conditional_expectation_deterministic_condition():
    pr = boxes.pr_box()
    # conditioning on b under mu=0: both outcomes have weight 1/2
    e = pr.conditional_expectation("A", 0, 0, 0)
    assert e == pytest.approx(1.0)
    e = pr.conditional_expectation("A", 0, 0, 1)
    assert e == pytest.approx(-1.0)


def test_conditional_expectation_zero_weight_raises():
    table = np.zeros((2, 2, 2, 2))
    table[:, :, 0, 0] = 1.0
    box = Behavior.validate(table)
    with pytest.raises(ZeroWeightCondition):
        box.conditional_expectation("A", 0, 0, 1)


def test_conditional_state_set_shape():
    states = boxes.uniform_box().conditional_state_set("A")
    assert len(states) == 4
    assert {(s.setting, s.outcome) for s in states} == {(m, b) for m in (0, 1) for b in (0, 1)}
    assert all(s.weight == pytest.approx(0.5) for s in states)


def test_json_round_trip():
    box = boxes.noisy_family(boxes.FamilyPoint(0.2, 0.1, 0.05))
    text = box.to_json()
    doc = json.loads(text)
    assert set(doc["p"]) == {"0,0", "0,1", "1,0", "1,1"}
    back = Behavior.from_json(text)
    np.testing.assert_allclose(back.table, box.table, atol=0)


@settings(max_examples=200, deadline=None)
@given(weights_st)
def test_mixtures_are_valid_and_chsh_bounded(weights):
    box = _mixture(weights)
    assert abs(box.chsh()) <= 4.0 + 1e-12


@settings(max_examples=200, deadline=None)
@given(weights_st)
def test_conditional_reconstruction_identity(weights):
    """Weighted conditional expectations reassemble the unconditioned one."""
    box = _mixture(weights)
    for nu in (0, 1):
        for mu in (0, 1):
            total = 0.0
            for b in (0, 1):
                w = box.table[nu, mu, :, b].sum()
                if w <= 1e-12:
                    continue
                total += w * box.conditional_expectation("A", nu, mu, b)
            assert total == pytest.approx(box.marginal_expectation("A", nu), abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(weights_st)
def test_local_mixtures_respect_chsh_classical_bound(weights):
    table = (weights[:16] / max(weights[:16].sum(), 1e-9)) @ boxes.extremal_vertices()[:16]
    box = Behavior.validate(table.reshape(2, 2, 2, 2))
    assert abs(box.chsh()) <= 2.0 + 1e-9
