import math

import numpy as np
import pytest

from ndwu_lab import quantum
from ndwu_lab.errors import InvalidDimension


def test_density_matrix_validation_rejects_non_psd():
    with pytest.raises(ValueError):
        quantum.DensityMatrix.validate(np.diag([1.5, -0.5]))


def test_density_matrix_validation_rejects_bad_trace():
    with pytest.raises(ValueError):
        quantum.DensityMatrix.validate(np.diag([0.7, 0.7]))


def test_sharp_basis_validation_rejects_non_unitary():
    with pytest.raises(ValueError):
        quantum.SharpBasis.validate(np.array([[1.0, 0.0], [1.0, 0.0]]))


def test_transfer_matrix_doubly_stochastic():
    for d, seed in [(2, 0), (3, 1), (5, 2)]:
        g = quantum.transfer_matrix(quantum.random_basis(d, seed),
                                    quantum.random_basis(d, seed + 100))
        np.testing.assert_allclose(g.sum(axis=0), 1.0, atol=1e-12)
        np.testing.assert_allclose(g.sum(axis=1), 1.0, atol=1e-12)
        assert (g >= -1e-15).all()


def test_transfer_symmetry():
    for d in (2, 3, 4):
        b0 = quantum.random_basis(d, d)
        b1 = quantum.random_basis(d, d + 50)
        assert quantum.verify_transfer_symmetry(b0, b1)
        fwd = quantum.transfer_matrix(b0, b1)
        rev = quantum.transfer_matrix(b1, b0)
        np.testing.assert_allclose(fwd, rev.T, atol=1e-12)


def test_theorem1_random_triples_hold():
    for seed in range(20):
        d = 2 + seed % 4
        rec = quantum.verify_theorem1(
            quantum.random_state(d, seed),
            quantum.random_basis(d, seed + 1),
            quantum.random_basis(d, seed + 2),
        )
        assert rec.holds
        assert rec.slack >= -1e-9


def test_theorem1_equality_witness():
    rec = quantum.verify_theorem1(quantum.PLUS_STATE, quantum.Z_BASIS, quantum.X_BASIS)
    assert abs(rec.lhs - rec.rhs) < 1e-12


def test_theorem1_slacks_batch_matches_scalar_sign():
    slacks = quantum.theorem1_slacks(500, 3, 123)
    assert slacks.shape == (500,)
    assert slacks.min() >= -1e-9


def test_random_state_dimension_guard():
    with pytest.raises(InvalidDimension):
        quantum.random_state(quantum.MAX_DIM + 1, 0)
    with pytest.raises(InvalidDimension):
        quantum.random_basis(1, 0)


def test_singlet_behavior_chsh():
    assert abs(quantum.singlet_behavior().chsh()) == pytest.approx(
        2 * math.sqrt(2), abs=1e-12
    )


def test_two_qubit_tables_are_valid_behaviors():
    from ndwu_lab.behavior import Behavior

    tables = quantum.two_qubit_tables(50, 9)
    assert tables.shape == (50, 16)
    for row in tables[:10]:
        Behavior.validate(row.reshape(2, 2, 2, 2))


def test_bloch_observable_projectors():
    obs = quantum.BlochObservable(np.array([0.0, 0.0, 1.0]))
    np.testing.assert_allclose(obs.projector(0), np.diag([1.0, 0.0]), atol=1e-15)
    np.testing.assert_allclose(
        obs.projector(0) + obs.projector(1), np.eye(2), atol=1e-15
    )
    with pytest.raises(ValueError):
        quantum.BlochObservable(np.array([0.0, 0.0, 2.0]))
