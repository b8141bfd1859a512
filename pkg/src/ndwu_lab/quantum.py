"""Finite-dimensional quantum oracle.

States are density matrices, sharp measurements are orthonormal bases, and
every quantity of the sequential-measurement relation is computed from
quadratic forms and squared overlaps.  Random ensembles (Ginibre-induced
states, Gaussian-orthonormalized bases) are deterministic per (d, seed) and
drive the fuzzing campaigns; batch variants generate whole trial arrays at
once for speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .behavior import DEFAULT_TOL, Behavior
from .errors import DimensionMismatch, InvalidDimension
from . import ndwu

_HERM_TOL = 1e-12
_PIVOT_TOL = -1e-12

MAX_DIM = 8


def _min_pivot(h: np.ndarray) -> float:
    """Smallest pivot of a symmetrically pivoted factorization of h."""
    H = np.array(h, dtype=complex)
    active = list(range(H.shape[0]))
    mn = math.inf
    while active:
        diag = np.array([H[i, i].real for i in active])
        jloc = int(np.argmax(diag))
        piv = float(diag[jloc])
        mn = min(mn, piv)
        if piv <= 1e-300:
            mn = min(mn, float(diag.min()))
            break
        j = active.pop(jloc)
        if active:
            col = H[active, j]
            H[np.ix_(active, active)] -= np.outer(col, col.conj()) / piv
    return mn


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace d x d matrix."""

    matrix: np.ndarray

    @classmethod
    def validate(cls, m) -> "DensityMatrix":
        m = np.asarray(m, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got {m.shape}")
        if np.abs(m - m.conj().T).max() > _HERM_TOL:
            raise ValueError("matrix is not Hermitian within 1e-12")
        if abs(m.trace().real - 1.0) > _HERM_TOL or abs(m.trace().imag) > _HERM_TOL:
            raise ValueError(f"trace is {m.trace()!r}, not 1")
        if _min_pivot(m) < _PIVOT_TOL:
            raise ValueError("matrix is not positive semidefinite")
        m = m.copy()
        m.setflags(write=False)
        return cls(m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class SharpBasis:
    """d orthonormal complex column vectors; one sharp measurement."""

    vectors: np.ndarray  # (d, d), column k is the outcome-k vector

    @classmethod
    def validate(cls, v) -> "SharpBasis":
        v = np.asarray(v, dtype=complex)
        gram = v.conj().T @ v
        if np.abs(gram - np.eye(v.shape[1])).max() > _HERM_TOL:
            raise ValueError("columns are not orthonormal within 1e-12")
        v = v.copy()
        v.setflags(write=False)
        return cls(v)

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]


@dataclass(frozen=True)
class BlochObservable:
    """Two-outcome qubit measurement along a unit Bloch vector."""

    n: np.ndarray  # unit 3-vector

    def __post_init__(self):
        n = np.asarray(self.n, dtype=float)
        if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > _HERM_TOL:
            raise ValueError(f"Bloch vector must be unit length, got {self.n!r}")
        n = n.copy()
        n.setflags(write=False)
        object.__setattr__(self, "n", n)

    def projector(self, outcome: int) -> np.ndarray:
        """(I + (-1)^outcome n.sigma) / 2."""
        nx, ny, nz = self.n
        ns = np.array([[nz, nx - 1j * ny], [nx + 1j * ny, -nz]])
        return (np.eye(2) + (-1) ** outcome * ns) / 2.0


# canonical qubit objects used by the equality-witness tests
Z_BASIS = SharpBasis.validate(np.eye(2))
X_BASIS = SharpBasis.validate(np.array([[1, 1], [1, -1]]) / math.sqrt(2))
PLUS_STATE = DensityMatrix.validate(np.full((2, 2), 0.5))
MAXIMALLY_MIXED_2 = DensityMatrix.validate(np.eye(2) / 2)


def outcome_probs(rho: DensityMatrix, basis: SharpBasis) -> np.ndarray:
    """p(a) = <v_a| rho |v_a>."""
    if rho.dim != basis.dim:
        raise DimensionMismatch(f"state dim {rho.dim} != basis dim {basis.dim}")
    v = basis.vectors
    p = np.einsum("ia,ij,ja->a", v.conj(), rho.matrix, v).real
    return np.clip(p, 0.0, 1.0)


def transfer_matrix(basis0: SharpBasis, basis1: SharpBasis) -> np.ndarray:
    """gamma[a', a] = |<basis1_a' | basis0_a>|^2; doubly stochastic."""
    if basis0.dim != basis1.dim:
        raise DimensionMismatch("bases have different dimensions")
    overlap = basis1.vectors.conj().T @ basis0.vectors
    return np.abs(overlap) ** 2


def sequential_stats(rho: DensityMatrix, basis0: SharpBasis, basis1: SharpBasis) -> np.ndarray:
    """Statistics of basis1 measured after basis0: gamma @ p0."""
    return transfer_matrix(basis0, basis1) @ outcome_probs(rho, basis0)


@dataclass(frozen=True)
class Theorem1Record:
    lhs: float
    rhs: float
    holds: bool

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs


def verify_theorem1(rho: DensityMatrix, basis0: SharpBasis, basis1: SharpBasis,
                    tol: float = DEFAULT_TOL) -> Theorem1Record:
    """Check uncertainty * disturbed-uncertainty >= disturbance for one triple."""
    p0 = outcome_probs(rho, basis0)
    p1 = outcome_probs(rho, basis1)
    gamma = transfer_matrix(basis0, basis1)  # [a', a]
    delta = ndwu.uncertainty(p0)
    # reversed-order transfer probabilities equal the same squared overlaps
    delta_dist = ndwu.disturbed_uncertainty(gamma.T)
    d = ndwu.disturbance(p1, p0, gamma)
    lhs = delta * delta_dist
    return Theorem1Record(lhs, d, lhs >= d - tol)


def verify_transfer_symmetry(basis0: SharpBasis, basis1: SharpBasis,
                             tol: float = 1e-12) -> bool:
    """Order-reversed transfer matrices must be transposes of each other."""
    fwd = transfer_matrix(basis0, basis1)
    rev = transfer_matrix(basis1, basis0)
    return bool(np.abs(fwd - rev.T).max() <= tol)


# -- random ensembles ------------------------------------------------------

def _check_dim(d: int):
    if not 2 <= d <= MAX_DIM:
        raise InvalidDimension(f"dimension must be in [2, {MAX_DIM}], got {d}")


def random_state(d: int, seed: int) -> DensityMatrix:
    """Ginibre-induced random state: G G^dag / tr, deterministic per (d, seed)."""
    _check_dim(d)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    m = g @ g.conj().T
    return DensityMatrix.validate(m / m.trace().real)


def _orthonormalize(g: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt with one re-orthogonalization pass."""
    d = g.shape[1]
    q = np.array(g, dtype=complex)
    for k in range(d):
        v = q[:, k]
        for _ in range(2):
            for j in range(k):
                v = v - (q[:, j].conj() @ v) * q[:, j]
        q[:, k] = v / np.linalg.norm(v)
    return q


def random_basis(d: int, seed: int) -> SharpBasis:
    """Orthonormalized complex-Gaussian basis, deterministic per (d, seed)."""
    _check_dim(d)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return SharpBasis.validate(_orthonormalize(g))


# -- two-qubit behaviors ---------------------------------------------------

def two_qubit_behavior(rho4: DensityMatrix, a0: BlochObservable, a1: BlochObservable,
                       b0: BlochObservable, b1: BlochObservable,
                       tol: float = DEFAULT_TOL) -> Behavior:
    """p(ab|nu,mu) = Tr(rho (M_A tensor M_B)); non-signaling by construction."""
    if rho4.dim != 4:
        raise DimensionMismatch(f"need a 4x4 state, got dim {rho4.dim}")
    aa = (a0, a1)
    bb = (b0, b1)
    p = np.empty((2, 2, 2, 2))
    for nu in (0, 1):
        for mu in (0, 1):
            for a in (0, 1):
                ma = aa[nu].projector(a)
                for b in (0, 1):
                    m = np.kron(ma, bb[mu].projector(b))
                    p[nu, mu, a, b] = np.trace(rho4.matrix @ m).real
    return Behavior.validate(p, tol=tol)


def singlet_behavior() -> Behavior:
    """Singlet state with the standard Tsirelson-saturating settings."""
    psi = np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2)
    rho = DensityMatrix.validate(np.outer(psi, psi.conj()))
    s = 1 / math.sqrt(2)
    return two_qubit_behavior(
        rho,
        BlochObservable(np.array([0.0, 0.0, 1.0])),
        BlochObservable(np.array([1.0, 0.0, 0.0])),
        BlochObservable(np.array([s, 0.0, s])),
        BlochObservable(np.array([-s, 0.0, s])),
    )


# -- batched ensembles for fuzzing campaigns ------------------------------

def _batch_ginibre(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    g = rng.standard_normal((n, d, d)) + 1j * rng.standard_normal((n, d, d))
    m = g @ np.conj(np.swapaxes(g, 1, 2))
    tr = np.einsum("nii->n", m).real
    return m / tr[:, None, None]


def _batch_bases(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    g = rng.standard_normal((n, d, d)) + 1j * rng.standard_normal((n, d, d))
    q, r = np.linalg.qr(g)
    # fix the phase ambiguity so the ensemble is well defined
    ph = np.einsum("njj->nj", r)
    return q * (ph / np.abs(ph))[:, None, :]


def theorem1_slacks(n: int, d: int, seed: int) -> np.ndarray:
    """lhs - rhs of the relation for n random (state, basis, basis) triples."""
    _check_dim(d)
    rng = np.random.default_rng(seed)
    rho = _batch_ginibre(rng, n, d)
    q0 = _batch_bases(rng, n, d)
    q1 = _batch_bases(rng, n, d)
    p0 = np.einsum("nia,nij,nja->na", q0.conj(), rho, q0).real
    p1 = np.einsum("nia,nij,nja->na", q1.conj(), rho, q1).real
    overlap = np.einsum("nia,nib->nab", q1.conj(), q0)  # [a', a]
    gamma = np.abs(overlap) ** 2
    delta = np.sqrt(np.clip(1.0 - (p0 * p0).sum(axis=1), 0.0, None))
    delta_dist = np.sqrt(np.clip(1.0 - (gamma * gamma).sum(axis=2), 0.0, None)).sum(axis=1)
    pushed = np.einsum("nab,nb->na", gamma, p0)
    dist = np.abs(p1 - pushed).sum(axis=1)
    return delta * delta_dist - dist


def symmetry_residual_max(n: int, d: int, seed: int) -> float:
    """Worst |gamma_fwd - gamma_rev^T| over n random basis pairs."""
    _check_dim(d)
    rng = np.random.default_rng(seed)
    q0 = _batch_bases(rng, n, d)
    q1 = _batch_bases(rng, n, d)
    fwd = np.abs(np.einsum("nia,nib->nab", q1.conj(), q0)) ** 2
    rev = np.abs(np.einsum("nia,nib->nab", q0.conj(), q1)) ** 2
    return float(np.abs(fwd - np.swapaxes(rev, 1, 2)).max())


def _batch_bloch_projectors(rng: np.random.Generator, n: int) -> np.ndarray:
    """(n, 2, 2, 2) array: [sample, outcome, i, j] for random Bloch directions."""
    v = rng.standard_normal((n, 3))
    v /= np.linalg.norm(v, axis=1)[:, None]
    ns = np.empty((n, 2, 2), dtype=complex)
    ns[:, 0, 0] = v[:, 2]
    ns[:, 0, 1] = v[:, 0] - 1j * v[:, 1]
    ns[:, 1, 0] = v[:, 0] + 1j * v[:, 1]
    ns[:, 1, 1] = -v[:, 2]
    eye = np.eye(2)
    out = np.empty((n, 2, 2, 2), dtype=complex)
    out[:, 0] = (eye + ns) / 2
    out[:, 1] = (eye - ns) / 2
    return out


def two_qubit_tables(n: int, seed: int) -> np.ndarray:
    """(n, 16) flat behavior tables from random states and Bloch settings."""
    rng = np.random.default_rng(seed)
    rho = _batch_ginibre(rng, n, 4).reshape(n, 2, 2, 2, 2)
    alice = [_batch_bloch_projectors(rng, n) for _ in range(2)]
    bob = [_batch_bloch_projectors(rng, n) for _ in range(2)]
    tables = np.empty((n, 2, 2, 2, 2))
    for nu in (0, 1):
        for mu in (0, 1):
            for a in (0, 1):
                for b in (0, 1):
                    tables[:, nu, mu, a, b] = np.einsum(
                        "nijkl,nki,nlj->n", rho, alice[nu][:, a], bob[mu][:, b]
                    ).real
    return tables.reshape(n, 16)
