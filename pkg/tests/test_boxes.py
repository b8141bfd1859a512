import itertools

import numpy as np
import pytest

from ndwu_lab import boxes
from ndwu_lab.behavior import Behavior
from ndwu_lab.errors import BadWeights, InvalidFamilyPoint


def test_extremal_vertices_shape_and_validity():
    v = boxes.extremal_vertices()
    assert v.shape == (24, 16)
    assert len({tuple(np.round(row, 12)) for row in v}) == 24
    for row in v:
        Behavior.validate(row.reshape(2, 2, 2, 2))


def test_local_boxes_have_classical_chsh():
    for box in boxes.all_local_boxes():
        assert abs(box.chsh()) <= 2.0 + 1e-12


def test_nonlocal_boxes_saturate_some_relabeled_game():
    for box in boxes.all_nonlocal_boxes():
        assert boxes.max_chsh_over_relabelings(box) == pytest.approx(4.0)


def test_pr_box_values():
    assert boxes.pr_box().chsh() == pytest.approx(4.0)
    assert boxes.pr_prime_box().chsh() == pytest.approx(0.0)
    assert boxes.max_chsh_over_relabelings(boxes.pr_prime_box()) == pytest.approx(4.0)


def test_family_point_validation():
    with pytest.raises(InvalidFamilyPoint):
        boxes.FamilyPoint(-0.1, 0.0, 0.0)
    with pytest.raises(InvalidFamilyPoint):
        boxes.FamilyPoint(0.6, 0.5, 0.0)


def test_family_special_points():
    np.testing.assert_allclose(
        boxes.noisy_family(boxes.FamilyPoint(1.0, 0.0, 0.0)).table,
        boxes.pr_box().table, atol=1e-12,
    )
    np.testing.assert_allclose(
        boxes.noisy_family(boxes.FamilyPoint(0.0, 0.0, 0.0)).table,
        boxes.uniform_box().table, atol=1e-12,
    )


def test_family_moments_closed_form():
    a, b, t = 0.15, 0.05, 0.2
    box = boxes.noisy_family(boxes.FamilyPoint(a, b, t))
    for setting in (0, 1):
        assert box.marginal_expectation("A", setting) == pytest.approx(t)
        assert box.marginal_expectation("B", setting) == pytest.approx(t)
    for nu, mu in itertools.product((0, 1), repeat=2):
        want = (-1) ** (nu * mu) * (a + (-1) ** mu * b) + t
        assert box.correlator(nu, mu) == pytest.approx(want)
    assert box.chsh() == pytest.approx(4 * a + 2 * t)


def test_mix_weights_validation():
    parts = [boxes.pr_box(), boxes.uniform_box()]
    mixed = boxes.mix(parts, [0.5, 0.5])
    assert mixed.chsh() == pytest.approx(2.0)
    with pytest.raises(BadWeights):
        boxes.mix(parts, [0.7, 0.7])
    with pytest.raises(BadWeights):
        boxes.mix(parts, [1.5, -0.5])


def test_aqc_marginals_and_joints():
    box = boxes.aqc_behavior()
    assert box.marginal_expectation("A", 1) == pytest.approx(7 / 11)
    assert box.marginal_expectation("B", 0) == pytest.approx(7 / 11)
    assert box.table[0, 0, 1, 1] == pytest.approx(22 / 125)
    assert box.table[1, 0, 1, 1] == pytest.approx(np.sqrt(2) / 9)
    assert box.table[0, 1, 1, 1] == pytest.approx(37 / 700)


def test_aqc_swap_changes_table():
    assert not np.allclose(
        boxes.aqc_behavior().table, boxes.aqc_behavior(swap_joint_order=True).table
    )
