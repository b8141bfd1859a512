import math

import numpy as np
import pytest

from ndwu_lab import boxes, criteria
from ndwu_lab.errors import InvalidGrid, NoSignChange


def test_tsirelson_constant():
    assert criteria.TSIRELSON == pytest.approx(2 * math.sqrt(2))


def test_boundary1_is_circle():
    assert criteria.boundary1(0.5, 0.5)
    assert not criteria.boundary1(0.6, 0.5)
    a = np.linspace(0, 1, 50)
    got = criteria.boundary1(a, 0.0)
    np.testing.assert_array_equal(got, a * a <= 0.5 + 1e-9)


def test_boundary2_matches_closed_form_margin_at_beta_zero():
    a = np.repeat(np.linspace(0, 1, 60), 60)
    t = np.tile(np.linspace(0, 1, 60), 60)
    ok = a + t <= 1.0
    np.testing.assert_array_equal(
        criteria.boundary2(a[ok], t[ok]),
        criteria.ndwu_family_boundary(a[ok], 0.0, t[ok]),
    )


def test_ndwu_family_margin_sign():
    assert criteria.ndwu_family_margin(0.1, 0.1, 0.1) > 0
    assert criteria.ndwu_family_margin(0.8, 0.1, 0.1) < 0
    assert criteria.ndwu_family_boundary(0.1, 0.1, 0.1)
    assert not criteria.ndwu_family_boundary(0.8, 0.1, 0.1)


def test_ndwu_family_degenerate_tau_one():
    assert criteria.ndwu_family_boundary(0.0, 0.0, 1.0)


def test_npa_variants_disagree_somewhere():
    a = np.repeat(np.linspace(0, 1, 40), 40)
    t = np.tile(np.linspace(0, 1, 40), 40)
    ok = a + t <= 1.0
    corr = criteria.npa_family_boundary2(a[ok], t[ok], variant="corrected")
    printed = criteria.npa_family_boundary2(a[ok], t[ok], variant="printed")
    assert (corr != printed).any()


def test_npa_corrected_matches_moment_evaluation():
    a = np.repeat(np.linspace(0, 0.6, 25), 25)
    t = np.tile(np.linspace(0, 0.39, 25), 25)
    closed = criteria.npa_family_boundary2(a, t, variant="corrected")
    tables = boxes.family_table(a, np.zeros_like(a), t)
    direct = criteria.npa_tlm_tables(tables)
    np.testing.assert_array_equal(closed, direct)


def test_ic_printed_and_corrected_differ():
    # at alpha=0 the corrected bound is satisfied for every tau < 1
    assert criteria.ic_family_boundary(0.0, 0.9)
    assert not criteria.ic_family_boundary(0.0, 0.9, printed=True)


def test_ic_quadratic_on_behaviors():
    assert criteria.ic_quadratic(boxes.uniform_box())
    assert not criteria.ic_quadratic(boxes.pr_box())


def test_mc_boundary_line():
    assert criteria.mc_boundary_line(0.5, 1 - 0.5 * math.sqrt(2) - 1e-12)
    assert not criteria.mc_boundary_line(0.5, 1 - 0.5 * math.sqrt(2) + 1e-6)


def test_generic_family_agrees_with_closed_form():
    a = np.repeat(np.linspace(0, 0.9, 30), 30)
    t = np.tile(np.linspace(0, 0.9, 30), 30)
    ok = a + t <= 1.0
    margin = criteria.ndwu_family_margin(a[ok], 0.0, t[ok])
    far = np.abs(margin) > 1e-7
    closed = criteria.ndwu_family_boundary(a[ok], 0.0, t[ok])
    generic = criteria.ndwu_generic_family(a[ok], 0.0, t[ok])
    np.testing.assert_array_equal(closed[far], generic[far])


def test_sweep_grid_and_csv(tmp_path):
    ds = criteria.sweep_grid(
        ["ndwu", "npa", "ic"], np.linspace(0, 1, 5), np.array([0.0]),
        np.linspace(0, 1, 4),
    )
    assert ds.params.shape == (20, 3)
    assert ds.verdicts.shape == (20, 3)
    out = tmp_path / "grid.csv"
    ds.to_csv(out)
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "alpha,beta,tau,ndwu,npa,ic"
    assert len(lines) == 21


def test_sweep_grid_rejects_unknown_criterion():
    with pytest.raises(InvalidGrid):
        criteria.sweep_grid(["nope"], np.linspace(0, 1, 3), np.array([0.0]),
                            np.linspace(0, 1, 3))


def test_boundary_bisect_finds_circle_radius():
    t = criteria.boundary_bisect(
        lambda a, b, tau: bool(criteria.boundary1(a, b)),
        (0.0, 0.0, 0.0), (1.0, 0.0, 0.0), tol=1e-12,
    )
    assert t == pytest.approx(1 / math.sqrt(2), abs=1e-9)


def test_boundary_bisect_requires_sign_change():
    with pytest.raises(NoSignChange):
        criteria.boundary_bisect(
            lambda a, b, tau: True, (0.0, 0.0, 0.0), (0.1, 0.0, 0.0)
        )
