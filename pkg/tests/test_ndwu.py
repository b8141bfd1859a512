import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ndwu_lab import boxes, ndwu
from ndwu_lab.errors import DimensionMismatch


def test_uncertainty_values():
    assert ndwu.uncertainty([0.5, 0.5]) == pytest.approx(1 / math.sqrt(2))
    assert ndwu.uncertainty([0.25, 0.75]) == pytest.approx(math.sqrt(0.375))
    assert ndwu.uncertainty([1.0, 0.0]) == pytest.approx(0.0)


def test_disturbed_uncertainty_values():
    assert ndwu.disturbed_uncertainty(np.eye(2)) == pytest.approx(0.0)
    assert ndwu.disturbed_uncertainty(np.full((2, 2), 0.5)) == pytest.approx(math.sqrt(2))
    assert ndwu.disturbed_uncertainty([[0.9, 0.1], [0.1, 0.9]]) == pytest.approx(
        2 * math.sqrt(0.18)
    )


def test_disturbance_zero_for_commuting_chain():
    p = np.array([0.3, 0.7])
    assert ndwu.disturbance(p, p, np.eye(2)) == pytest.approx(0.0)


def test_disturbance_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        ndwu.disturbance([0.5, 0.5], [1.0, 0.0, 0.0], np.eye(2))


def test_c_interval_example():
    iv = ndwu.c_interval(0.6, 0.8)
    assert iv.lo == pytest.approx(0.0, abs=1e-15)
    assert iv.hi == pytest.approx(0.96)
    assert iv.width == pytest.approx(0.96)
    assert iv.contains(0.5)
    assert not iv.contains(0.97)


def test_c_interval_degenerate_at_extremes():
    iv = ndwu.c_interval(1.0, -1.0)
    assert iv.lo == pytest.approx(-1.0)
    assert iv.hi == pytest.approx(-1.0)


@settings(max_examples=300, deadline=None)
@given(
    st.floats(-1, 1, allow_nan=False),
    st.floats(-1, 1, allow_nan=False),
    st.floats(-1, 1, allow_nan=False),
)
def test_two_outcome_relation_matches_interval(e0, e1, c):
    assert ndwu.two_outcome_relation(e0, e1, c) == ndwu.c_interval(e0, e1).contains(c)


def test_relation_holds_helper():
    assert ndwu.ndwu_relation_holds(0.5, 0.5, 0.2)
    assert not ndwu.ndwu_relation_holds(0.1, 0.1, 0.2)


def test_criterion_verdicts_on_zoo():
    assert ndwu.criterion(boxes.uniform_box()).overall
    assert not ndwu.criterion(boxes.pr_box()).overall
    assert ndwu.criterion(boxes.noisy_family(boxes.FamilyPoint(0.1, 0.1, 0.1))).overall


def test_criterion_report_dict_shape():
    rep = ndwu.criterion(boxes.uniform_box())
    d = rep.to_dict()
    assert set(d) == {"side_a", "side_b", "overall"}
    assert set(d["side_a"]) == {"max_lhs", "min_rhs", "satisfied", "skipped_states"}


def test_criterion_skips_zero_weight_conditions():
    import ndwu_lab

    # B always outputs 0, so conditioning on b=1 carries zero weight
    table = np.zeros((2, 2, 2, 2))
    table[:, :, 0, 0] = 0.5
    table[:, :, 1, 0] = 0.5
    box = ndwu_lab.Behavior.validate(table)
    rep = ndwu.criterion(box)
    assert rep.side_a.skipped_states == 2
    assert rep.overall
