"""Bounded derivative-free minimizer (Nelder-Mead with bound clipping).

Every probed point is clipped into the box, so objectives may assume
their argument is feasible.  Termination: simplex diameter below
``x_tol`` and best-to-worst function spread below ``f_tol`` (requiring
both avoids a premature stop when the simplex straddles a minimum
symmetrically, which zeroes the spread at a large diameter).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["OptimizerSpec", "NonconvergenceError", "minimize"]


@dataclass(frozen=True)
class OptimizerSpec:
    x_tol: float = 1e-8
    f_tol: float = 1e-10
    max_evals: int = 100_000


class NonconvergenceError(RuntimeError):
    """Raised when max_evals is exhausted; carries the best point found."""

    def __init__(self, msg, x_best, f_best, evals):
        super().__init__(msg)
        self.x_best = np.asarray(x_best)
        self.f_best = f_best
        self.evals = evals


def minimize(objective, bounds, init, opt: OptimizerSpec = OptimizerSpec()):
    """Minimize ``objective`` over a box.

    Parameters
    ----------
    objective : callable
        Maps a 1-D float array to a finite scalar.
    bounds : sequence of (lo, hi)
        Box constraints, one pair per coordinate.
    init : array_like
        Starting point; must lie inside the box.
    opt : OptimizerSpec
        Tolerances and the evaluation budget.

    Returns
    -------
    (x, fval, evals)
    """
    lo = np.array([b[0] for b in bounds], dtype=float)
    hi = np.array([b[1] for b in bounds], dtype=float)
    x0 = np.asarray(init, dtype=float)
    if x0.shape != lo.shape:
        raise ValueError("init and bounds dimensions differ")
    if (x0 < lo).any() or (x0 > hi).any():
        raise ValueError("init must lie within bounds")

    nevals = 0

    def f(x):
        nonlocal nevals
        nevals += 1
        return float(objective(x))

    def clip(x):
        return np.minimum(np.maximum(x, lo), hi)

    n = len(x0)
    # initial simplex: perturb each coordinate by 5% of its starting
    # magnitude (the usual Nelder-Mead convention); box-width-relative
    # steps explode on wide transformed coordinates
    step = np.where(np.abs(x0) > 1e-3, 0.05 * np.abs(x0), 0.05)
    step = np.minimum(step, 0.5 * (hi - lo))
    pts = [x0]
    for i in range(n):
        p = x0.copy()
        p[i] = p[i] + step[i] if p[i] + step[i] <= hi[i] else p[i] - step[i]
        pts.append(p)
    simplex = np.array(pts)
    fvals = np.array([f(p) for p in simplex])
    if not np.isfinite(fvals[0]):
        raise ValueError("objective not finite at init")

    while nevals < opt.max_evals:
        order = np.argsort(fvals)
        simplex, fvals = simplex[order], fvals[order]
        diameter = np.max(np.abs(simplex[1:] - simplex[0]))
        if diameter < opt.x_tol and (fvals[-1] - fvals[0]) <= opt.f_tol:
            return simplex[0], fvals[0], nevals

        centroid = simplex[:-1].mean(axis=0)
        worst, fworst = simplex[-1], fvals[-1]
        refl = clip(centroid + (centroid - worst))
        frefl = f(refl)
        if frefl < fvals[0]:
            exp = clip(centroid + 2.0 * (centroid - worst))
            fexp = f(exp)
            if fexp < frefl:
                simplex[-1], fvals[-1] = exp, fexp
            else:
                simplex[-1], fvals[-1] = refl, frefl
        elif frefl < fvals[-2]:
            simplex[-1], fvals[-1] = refl, frefl
        else:
            if frefl < fworst:  # outside contraction
                cand = clip(centroid + 0.5 * (refl - centroid))
            else:  # inside contraction
                cand = clip(centroid - 0.5 * (centroid - worst))
            fcand = f(cand)
            if fcand < min(frefl, fworst):
                simplex[-1], fvals[-1] = cand, fcand
            else:  # shrink toward the best vertex
                for i in range(1, n + 1):
                    simplex[i] = clip(simplex[0] + 0.5 * (simplex[i] - simplex[0]))
                    fvals[i] = f(simplex[i])

    order = np.argsort(fvals)
    raise NonconvergenceError(
        f"no convergence within {opt.max_evals} evaluations",
        simplex[order[0]],
        fvals[order[0]],
        nevals,
    )
