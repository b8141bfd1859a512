"""Sampling of the no-signaling polytope and the Tsirelson stress scan.

Behaviors are drawn as Dirichlet mixtures of the 24 extremal boxes; a spiky
concentration pushes samples toward the faces where the criterion-versus-
CHSH question is actually decided.  The scan then refines the strongest
surviving samples by greedily mixing toward the extremal nonlocal box of
matching CHSH sign (plus random jitter) while the criterion stays
satisfied, and reports the largest |CHSH| reached.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .behavior import DEFAULT_TOL
from .boxes import extremal_vertices
from .criteria import TSIRELSON
from . import kernels

# vertex-row indices in extremal_vertices(): 16 local rows, then the 8
# nonlocal rows in (t, s, l) lexicographic order
_PR_INDEX = 16        # (0,0,0), CHSH = +4
_ANTI_PR_INDEX = 17   # (0,0,1), CHSH = -4

_RAY_STEPS = (0.5, 0.2, 0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001, 0.0005)


def sample_mixture_weights(n: int, seed, concentration: float = 0.15) -> np.ndarray:
    """(n, 24) Dirichlet weights over the extremal boxes."""
    rng = np.random.default_rng(seed)
    return rng.dirichlet(np.full(24, concentration), size=n)


def sample_no_signaling_tables(n: int, seed, concentration: float = 0.15) -> np.ndarray:
    """(n, 16) flat tables of random no-signaling behaviors."""
    return sample_mixture_weights(n, seed, concentration) @ extremal_vertices()


@dataclass(frozen=True)
class TsirelsonScanResult:
    n_samples: int
    n_satisfied: int
    max_abs_chsh_sampled: float
    max_abs_chsh_refined: float
    n_bound_violations: int
    witness_weights: np.ndarray | None

    @property
    def passed(self) -> bool:
        return self.n_bound_violations == 0


def _refine(weights: np.ndarray, vertices: np.ndarray, tol: float,
            iters: int, rng: np.random.Generator) -> np.ndarray:
    """Greedy |CHSH| ascent within the criterion-satisfied region."""
    w = weights.copy()
    m = w.shape[0]
    for _ in range(iters):
        ch = kernels.chsh_batch(w @ vertices)
        target = np.where(ch >= 0, _PR_INDEX, _ANTI_PR_INDEX)
        stepped = np.zeros(m, dtype=bool)
        for e in _RAY_STEPS:
            todo = ~stepped
            if not todo.any():
                break
            prop = w[todo] * (1.0 - e)
            prop[np.arange(prop.shape[0]), target[todo]] += e
            ok = kernels.criterion_batch(prop @ vertices, tol)[:, 6] > 0.5
            idx = np.flatnonzero(todo)[ok]
            w[idx] = prop[ok]
            stepped[idx] = True
        # jitter step keeps chains from pinning to a single ray
        jitter = rng.dirichlet(np.full(24, 0.3), size=m)
        prop = 0.98 * w + 0.02 * jitter
        rep = kernels.criterion_batch(prop @ vertices, tol)
        better = (rep[:, 6] > 0.5) & (
            np.abs(kernels.chsh_batch(prop @ vertices)) > np.abs(kernels.chsh_batch(w @ vertices))
        )
        w[better] = prop[better]
    return w


def tsirelson_scan(n_samples: int, seed, tol: float = DEFAULT_TOL,
                   bound_slack: float = 1e-6, refine_top: int = 100,
                   refine_iters: int = 60) -> TsirelsonScanResult:
    """Search for criterion-satisfying behaviors beyond the Tsirelson bound."""
    vertices = extremal_vertices()
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.full(24, 0.15), size=n_samples)
    tables = weights @ vertices
    sat = kernels.criterion_batch(tables, tol)[:, 6] > 0.5
    ch = np.abs(kernels.chsh_batch(tables))
    sampled_max = float(ch[sat].max()) if sat.any() else 0.0
    violations = int((sat & (ch > TSIRELSON + bound_slack)).sum())
    witness = None
    if violations:
        witness = weights[sat & (ch > TSIRELSON + bound_slack)][0]

    refined_max = sampled_max
    if refine_top and sat.any():
        order = np.argsort(ch * sat)[::-1][:refine_top]
        w = _refine(weights[order], vertices, tol, refine_iters, rng)
        tables_r = w @ vertices
        sat_r = kernels.criterion_batch(tables_r, tol)[:, 6] > 0.5
        ch_r = np.abs(kernels.chsh_batch(tables_r))
        if sat_r.any():
            refined_max = max(refined_max, float(ch_r[sat_r].max()))
        over = sat_r & (ch_r > TSIRELSON + bound_slack)
        if over.any() and witness is None:
            witness = w[over][0]
        violations += int(over.sum())
    return TsirelsonScanResult(
        n_samples=n_samples,
        n_satisfied=int(sat.sum()),
        max_abs_chsh_sampled=sampled_max,
        max_abs_chsh_refined=refined_max,
        n_bound_violations=violations,
        witness_weights=witness,
    )
