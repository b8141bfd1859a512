"""Pure-numpy batch kernels (fallback backend).

Operates on flat-16 behavior tables, index ((nu*2+mu)*2+a)*2+b.  Must stay
semantically identical to the compiled backend in `_core.pyx`; the test
suite cross-checks both against the scalar reference implementation.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def _chsh_coeff() -> np.ndarray:
    c = np.empty(16)
    for nu in (0, 1):
        for mu in (0, 1):
            for a in (0, 1):
                for b in (0, 1):
                    c[((nu * 2 + mu) * 2 + a) * 2 + b] = (-1.0) ** (a + b + nu * mu)
    return c


_CHSH = _chsh_coeff()


def chsh_batch(tables) -> np.ndarray:
    """CHSH value per row of an (N, 16) table batch."""
    return np.asarray(tables, dtype=float).reshape(-1, 16) @ _CHSH


def _moments(t: np.ndarray):
    pa = t.sum(axis=4)  # [n, nu, mu, a]
    a_marg = 0.5 * (pa[:, :, 0, 0] - pa[:, :, 0, 1] + pa[:, :, 1, 0] - pa[:, :, 1, 1])
    pb = t.sum(axis=3)  # [n, nu, mu, b]
    b_marg = 0.5 * (pb[:, 0, :, 0] - pb[:, 0, :, 1] + pb[:, 1, :, 0] - pb[:, 1, :, 1])
    corr = t[:, :, :, 0, 0] - t[:, :, :, 0, 1] - t[:, :, :, 1, 0] + t[:, :, :, 1, 1]
    return a_marg, b_marg, corr


def _side(meas, cond, corr_of, tol):
    """max_lhs, min_rhs, skipped over the 4 remote-conditioned states."""
    n = meas.shape[0]
    mx = np.full(n, -2.0)
    mn = np.full(n, 2.0)
    skipped = np.zeros(n)
    for setting in (0, 1):
        for outcome in (0, 1):
            sign = (-1.0) ** outcome
            w = (1.0 + sign * cond[:, setting]) / 2.0
            alive = w > tol
            denom = np.where(alive, 2.0 * w, 1.0)
            e0 = np.clip((meas[:, 0] + sign * corr_of(0, setting)) / denom, -1.0, 1.0)
            e1 = np.clip((meas[:, 1] + sign * corr_of(1, setting)) / denom, -1.0, 1.0)
            r = np.sqrt((1.0 - e0 * e0) * (1.0 - e1 * e1))
            mx = np.where(alive, np.maximum(mx, e0 * e1 - r), mx)
            mn = np.where(alive, np.minimum(mn, e0 * e1 + r), mn)
            skipped += ~alive
    return mx, mn, skipped


def criterion_batch(tables, tol: float = 1e-9) -> np.ndarray:
    """Correlation-criterion summary per row of an (N, 16) batch.

    Columns: max_lhs_A, min_rhs_A, skipped_A, max_lhs_B, min_rhs_B,
    skipped_B, overall (1.0 when both sides are satisfied within tol).
    """
    t = np.asarray(tables, dtype=float).reshape(-1, 2, 2, 2, 2)
    a_marg, b_marg, corr = _moments(t)
    mxa, mna, ska = _side(a_marg, b_marg, lambda m, s: corr[:, m, s], tol)
    mxb, mnb, skb = _side(b_marg, a_marg, lambda m, s: corr[:, s, m], tol)
    overall = (mxa <= mna + tol) & (mxb <= mnb + tol)
    return np.column_stack([mxa, mna, ska, mxb, mnb, skb, overall.astype(float)])
