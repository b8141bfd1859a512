"""Closed-form quantum-boundary criteria and sweep/bisection machinery.

All family-slice functions accept scalars or numpy arrays and broadcast.
A point is "inside" a criterion when it lies in the valid mixing simplex
and the criterion's inequality holds within tol.

Two of the published closed forms for this family circulate with typos; the
defaults here are the algebraically corrected versions, arbitrated against
the behavior-level oracles (`npa_tlm`, `ic_quadratic`).  The verbatim
printed variants stay available behind `variant=` / `printed=` flags; see
the README for the observed discrepancies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .behavior import DEFAULT_TOL, Behavior
from .boxes import family_table
from .errors import InvalidGrid, NoSignChange
from . import kernels

TSIRELSON = 2.0 * math.sqrt(2.0)


def _as_arrays(*vals):
    arrs = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in vals))
    return arrs


def _ret(x, scalar: bool):
    if scalar:
        return x.item() if hasattr(x, "item") else x
    return x


def simplex_valid(alpha, beta, tau, tol: float = 1e-12):
    a, b, t = _as_arrays(alpha, beta, tau)
    ok = (a >= -tol) & (b >= -tol) & (t >= -tol) & (a + b + t <= 1 + tol)
    return _ret(ok, np.isscalar(alpha) and np.isscalar(beta) and np.isscalar(tau))


# -- the three-dimensional closed-form boundary ---------------------------

def ndwu_family_margin(alpha, beta, tau):
    """Signed margin of the family boundary inequality (>= 0 means inside).

    Points where a normalized correlator argument exceeds 1, and the tau=1
    degenerate edge with (alpha, beta) != 0, are declared outside.
    """
    a, b, t = _as_arrays(alpha, beta, tau)
    scalar = a.ndim == 0
    a, b, t = np.atleast_1d(a, b, t)
    deg = t >= 1.0
    om = np.where(deg, 1.0, 1.0 - t)  # guarded 1 - tau
    op = 1.0 + t
    s = (a + b) / om
    d = np.abs(a - b) / om
    big_s = (a + b + 2 * t) / op
    big_d = (np.abs(a - b) + 2 * t) / op
    lhs = (
        np.sqrt(np.clip(1 - s * s, 0, None)) * np.sqrt(np.clip(1 - d * d, 0, None))
        - np.abs(a * a - b * b) / (om * om)
    )
    rhs = big_s * big_d - np.sqrt(np.clip(1 - big_s * big_s, 0, None)) * np.sqrt(
        np.clip(1 - big_d * big_d, 0, None)
    )
    margin = lhs - rhs
    margin = np.where((s > 1) | (big_s > 1), -1.0, margin)
    margin = np.where(deg, np.where((a == 0) & (b == 0), 0.0, -1.0), margin)
    return _ret(margin[0] if scalar else margin, scalar)


def ndwu_family_boundary(alpha, beta, tau, tol: float = DEFAULT_TOL):
    m = ndwu_family_margin(alpha, beta, tau)
    return np.asarray(m) >= -tol if not np.isscalar(m) else m >= -tol


def boundary1(alpha, beta, tol: float = DEFAULT_TOL):
    """tau = 0 reduction: alpha^2 + beta^2 <= 1/2."""
    a, b = _as_arrays(alpha, beta)
    ok = a * a + b * b <= 0.5 + tol
    return _ret(ok, np.isscalar(alpha) and np.isscalar(beta))


def boundary2(alpha, tau, tol: float = DEFAULT_TOL):
    """beta = 0 reduction: (alpha+2 tau)^2/(1+tau)^2 + alpha^2/(1-tau)^2 <= 1."""
    a, t = _as_arrays(alpha, tau)
    scalar = a.ndim == 0
    a, t = np.atleast_1d(a, t)
    deg = t >= 1.0
    om = np.where(deg, 1.0, 1.0 - t)
    val = (a + 2 * t) ** 2 / (1 + t) ** 2 + a * a / (om * om)
    ok = np.where(deg, a == 0, val <= 1 + tol)
    return _ret(ok[0] if scalar else ok, scalar)


# -- NPA / TLM level-1 ----------------------------------------------------

def _npa_from_moments(a_marg, b_marg, corr, tol):
    """Vectorized TLM condition from marginals (n,2),(n,2) and correlators (n,2,2)."""
    det = np.maximum(np.abs(a_marg).max(axis=1), np.abs(b_marg).max(axis=1)) >= 1 - tol
    denom = np.sqrt(
        np.clip((1 - a_marg**2)[:, :, None] * (1 - b_marg**2)[:, None, :], 1e-300, None)
    )
    d = np.clip((corr - a_marg[:, :, None] * b_marg[:, None, :]) / denom, -1.0, 1.0)
    s = np.arcsin(d)
    tot = s.sum(axis=(1, 2))
    worst = np.abs(tot[:, None, None] - 2 * s).max(axis=(1, 2))
    return det | (worst <= np.pi + tol)


def npa_tlm_tables(tables, tol: float = DEFAULT_TOL) -> np.ndarray:
    """TLM / NPA level-1 verdict per row of an (N, 16) batch."""
    t = np.asarray(tables, dtype=float).reshape(-1, 2, 2, 2, 2)
    pa = t.sum(axis=4)
    a_marg = 0.5 * (pa[:, :, 0, 0] - pa[:, :, 0, 1] + pa[:, :, 1, 0] - pa[:, :, 1, 1])
    pb = t.sum(axis=3)
    b_marg = 0.5 * (pb[:, 0, :, 0] - pb[:, 0, :, 1] + pb[:, 1, :, 0] - pb[:, 1, :, 1])
    corr = t[:, :, :, 0, 0] - t[:, :, :, 0, 1] - t[:, :, :, 1, 0] + t[:, :, :, 1, 1]
    return _npa_from_moments(a_marg, b_marg, corr, tol)


def npa_tlm(behavior: Behavior, tol: float = DEFAULT_TOL) -> bool:
    """Analytic level-1 condition on marginal-normalized correlators.

    For each placement of the flagged cell, |sum arcsin D - 2 arcsin D_flag|
    <= pi.  A wing with a deterministic marginal is declared satisfied.
    """
    return bool(npa_tlm_tables(behavior.flat()[None, :], tol=tol)[0])


def npa_family_boundary2(alpha, tau, variant: str = "corrected",
                         tol: float = DEFAULT_TOL):
    """Closed-form NPA verdict on the beta = 0 slice.

    variant "corrected" (default) is the exact TLM reduction
    3 arcsin((a+t-t^2)/(1-t^2)) + arcsin((a-t+t^2)/(1-t^2)) <= pi; the
    "printed-denominator" and "printed" variants keep the circulated form's
    numerators (and, for "printed", its (1-beta^2)=1 denominator).
    """
    a, t = _as_arrays(alpha, tau)
    scalar = a.ndim == 0
    a, t = np.atleast_1d(a, t)
    deg = t >= 1.0 - tol
    d = np.where(deg, 1.0, 1.0 - t * t)
    if variant == "corrected":
        x_raw = (a + t - t * t) / d
        y_raw = (a - t + t * t) / d
        stat = 3 * np.arcsin(np.clip(x_raw, -1, 1)) + np.arcsin(np.clip(y_raw, -1, 1))
    elif variant in ("printed-denominator", "printed"):
        xden = d if variant == "printed-denominator" else np.ones_like(d)
        x_raw = (a + t - t * t) / xden
        y_raw = (a - t - t * t) / d
        stat = np.abs(
            3 * np.arcsin(np.clip(x_raw, -1, 1)) - np.arcsin(np.clip(y_raw, -1, 1))
        )
    else:
        raise ValueError(f"unknown variant {variant!r}")
    ok = stat <= np.pi + tol
    ok = np.where(np.maximum(np.abs(x_raw), np.abs(y_raw)) > 1 + 1e-9, False, ok)
    ok = np.where(deg, True, ok)
    return _ret(ok[0] if scalar else ok, scalar)


# -- information causality (quadratic correlator bound) -------------------

def ic_quadratic_tables(tables, tol: float = DEFAULT_TOL) -> np.ndarray:
    """((C00+C10)/2)^2 + ((C01-C11)/2)^2 <= 1 per row."""
    t = np.asarray(tables, dtype=float).reshape(-1, 2, 2, 2, 2)
    corr = t[:, :, :, 0, 0] - t[:, :, :, 0, 1] - t[:, :, :, 1, 0] + t[:, :, :, 1, 1]
    e1 = (corr[:, 0, 0] + corr[:, 1, 0]) / 2
    e2 = (corr[:, 0, 1] - corr[:, 1, 1]) / 2
    return e1 * e1 + e2 * e2 <= 1 + tol


def ic_quadratic(behavior: Behavior, tol: float = DEFAULT_TOL) -> bool:
    return bool(ic_quadratic_tables(behavior.flat()[None, :], tol=tol)[0])


def ic_family_boundary(alpha, tau, printed: bool = False, tol: float = DEFAULT_TOL):
    """IC verdict on the beta = 0 slice.

    Default is (alpha+tau)^2 + alpha^2 <= 1, the quadratic correlator bound
    evaluated on the family; `printed=True` selects the circulated
    (alpha+tau)^2 + tau^2 form (see README for why it is not the default).
    """
    a, t = _as_arrays(alpha, tau)
    second = t if printed else a
    ok = (a + t) ** 2 + second * second <= 1 + tol
    return _ret(ok, np.isscalar(alpha) and np.isscalar(tau))


def mc_boundary_line(alpha, beta, tol: float = DEFAULT_TOL):
    """Shared-randomness (convex-hull) line: beta + sqrt(2) alpha <= 1."""
    a, b = _as_arrays(alpha, beta)
    ok = b + math.sqrt(2.0) * a <= 1 + tol
    return _ret(ok, np.isscalar(alpha) and np.isscalar(beta))


# -- family criterion registry --------------------------------------------

def ndwu_generic_family(alpha, beta, tau, tol: float = DEFAULT_TOL):
    """Theorem-2 criterion evaluated on reconstructed family tables."""
    a, b, t = _as_arrays(alpha, beta, tau)
    scalar = a.ndim == 0
    a, b, t = np.atleast_1d(a, b, t)
    rep = kernels.criterion_batch(family_table(a.ravel(), b.ravel(), t.ravel()), tol)
    ok = rep[:, 6].astype(bool).reshape(a.shape)
    return _ret(ok[0] if scalar else ok, scalar)


def _crit_ndwu(a, b, t, tol):
    return ndwu_family_boundary(a, b, t, tol=tol)


def _crit_ndwu_generic(a, b, t, tol):
    return ndwu_generic_family(a, b, t, tol=tol)


def _crit_npa(a, b, t, tol):
    a, b, t = np.atleast_1d(*_as_arrays(a, b, t))
    return npa_tlm_tables(family_table(a.ravel(), b.ravel(), t.ravel()), tol).reshape(a.shape)


def _crit_ic(a, b, t, tol):
    a, b, t = np.atleast_1d(*_as_arrays(a, b, t))
    return ic_quadratic_tables(family_table(a.ravel(), b.ravel(), t.ravel()), tol).reshape(a.shape)


def _crit_mc(a, b, t, tol):
    return mc_boundary_line(a, t, tol=tol)


def _crit_tsirelson(a, b, t, tol):
    a, b, t = _as_arrays(a, b, t)
    return np.maximum(4 * a + 2 * t, 4 * b + 2 * t) <= TSIRELSON + tol


#: family criteria usable in sweeps: name -> verdict(alpha, beta, tau, tol)
FAMILY_CRITERIA = {
    "ndwu": _crit_ndwu,
    "ndwu-generic": _crit_ndwu_generic,
    "npa": _crit_npa,
    "ic": _crit_ic,
    "mc": _crit_mc,
    "tsirelson": _crit_tsirelson,
}


# -- sweeps and bisection -------------------------------------------------

@dataclass(frozen=True)
class BoundaryDataset:
    """Plot-ready grid of per-criterion verdicts over family parameters."""

    criteria: tuple
    params: np.ndarray  # (N, 3) alpha, beta, tau
    verdicts: np.ndarray  # (N, k) bool

    def to_csv(self, path):
        with open(path, "w") as fh:
            fh.write(",".join(["alpha", "beta", "tau", *self.criteria]) + "\n")
            for row, verd in zip(self.params, self.verdicts):
                cells = [repr(float(x)) for x in row]
                cells += [str(int(v)) for v in verd]
                fh.write(",".join(cells) + "\n")


def sweep_grid(criteria_names, alphas, betas, taus,
               tol: float = DEFAULT_TOL) -> BoundaryDataset:
    """One row per grid point, alpha-major order, deterministic.

    Points outside the mixing simplex get verdict False for every criterion.
    """
    alphas = np.atleast_1d(np.asarray(alphas, float))
    betas = np.atleast_1d(np.asarray(betas, float))
    taus = np.atleast_1d(np.asarray(taus, float))
    unknown = [n for n in criteria_names if n not in FAMILY_CRITERIA]
    if unknown:
        raise InvalidGrid(f"unknown criteria: {unknown}")
    if alphas.size * betas.size * taus.size < 2:
        raise InvalidGrid("grid needs at least 2 points")
    ga, gb, gt = np.meshgrid(alphas, betas, taus, indexing="ij")
    a, b, t = ga.ravel(), gb.ravel(), gt.ravel()
    valid = simplex_valid(a, b, t)
    verdicts = np.empty((a.size, len(criteria_names)), dtype=bool)
    for j, name in enumerate(criteria_names):
        verdicts[:, j] = np.asarray(FAMILY_CRITERIA[name](a, b, t, tol)) & valid
    return BoundaryDataset(tuple(criteria_names), np.column_stack([a, b, t]), verdicts)


def boundary_bisect(criterion, ray_origin, ray_direction, tol: float = 1e-10,
                    t_max: float = 1.0) -> float:
    """Critical ray parameter where a criterion verdict flips.

    `criterion` maps (alpha, beta, tau) to a bool; the verdict must be True
    at the origin and False at t_max, else NoSignChange is raised.
    """
    o = np.asarray(ray_origin, float)
    u = np.asarray(ray_direction, float)

    def verdict(t):
        p = o + t * u
        return bool(criterion(p[0], p[1], p[2]))

    lo, hi = 0.0, float(t_max)
    if not verdict(lo) or verdict(hi):
        raise NoSignChange(f"no verdict flip on ray {o} + t*{u}, t in [0, {t_max}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if verdict(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
