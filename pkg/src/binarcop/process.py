"""Binomial thinning, BINAR(1) simulation and theoretical moments.

A BINAR(1) state evolves as X_t = alpha o X_{t-1} + R_t componentwise,
where ``alpha o x`` is a sum of x i.i.d. Bernoulli(alpha) draws and the
innovation pair R_t is i.i.d. over time with copula-joint marginals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .copulas import InnovationModel, innovation_covariance, sample_innovations
from .distributions import MarginalSpec, mean, third_moment, variance

__all__ = [
    "BinarModel",
    "SeriesPair",
    "MomentSummary",
    "thin",
    "simulate",
    "theoretical_moments",
    "cls_asymptotic_cov_poisson",
    "cls_asymptotic_cov_general",
]

DEFAULT_BURNIN = 500


@dataclass(frozen=True)
class BinarModel:
    """Survival probabilities plus the joint innovation model."""

    alpha1: float
    alpha2: float
    innovations: InnovationModel

    def __post_init__(self):
        for a in (self.alpha1, self.alpha2):
            if not 0.0 <= a < 1.0:
                raise ValueError(f"survival probability must be in [0, 1), got {a}")


@dataclass(frozen=True)
class SeriesPair:
    """Two aligned nonnegative integer count series of equal length."""

    x1: np.ndarray
    x2: np.ndarray

    def __post_init__(self):
        x1 = np.asarray(self.x1, dtype=np.int64)
        x2 = np.asarray(self.x2, dtype=np.int64)
        if x1.ndim != 1 or x2.ndim != 1 or len(x1) != len(x2):
            raise ValueError("series must be 1-D and of equal length")
        if len(x1) < 2:
            raise ValueError("need at least 2 observations")
        if (x1 < 0).any() or (x2 < 0).any():
            raise ValueError("counts must be nonnegative")
        object.__setattr__(self, "x1", x1)
        object.__setattr__(self, "x2", x2)

    def __len__(self):
        return len(self.x1)


@dataclass(frozen=True)
class MomentSummary:
    mean1: float
    mean2: float
    var1: float
    var2: float
    alpha1: float
    alpha2: float
    cross_cov: float
    cross_corr: float

    def autocorr(self, j: int, h: int) -> float:
        """Lag-h autocorrelation of component j (1 or 2): alpha_j^h."""
        return (self.alpha1 if j == 1 else self.alpha2) ** h


def thin(alpha: float, x: int, rng: np.random.Generator) -> int:
    """Binomial thinning alpha o x: sum of x Bernoulli(alpha) draws."""
    if x == 0 or alpha == 0.0:
        # still exact: the Bernoulli sum is empty or a.s. zero
        return 0 if x == 0 else int((rng.random(x) < alpha).sum())
    return int((rng.random(x) < alpha).sum())


def simulate(
    model: BinarModel,
    n: int,
    burnin: int = DEFAULT_BURNIN,
    seed=0,
) -> SeriesPair:
    """Simulate n observations of the BINAR(1) recursion.

    ``seed`` may be an int, a sequence of ints or an existing
    ``numpy.random.Generator``.  All innovation pairs are drawn from the
    stream first (they are i.i.d.), then the thinning draws follow in
    time order, so output is deterministic for a fixed seed.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    total = burnin + n
    r1, r2 = sample_innovations(model.innovations, total + 1, rng)
    x1, x2 = int(r1[0]), int(r2[0])  # initial state: a single innovation pair
    out1 = np.empty(n, dtype=np.int64)
    out2 = np.empty(n, dtype=np.int64)
    a1, a2 = model.alpha1, model.alpha2
    for t in range(total):
        x1 = thin(a1, x1, rng) + int(r1[t + 1])
        x2 = thin(a2, x2, rng) + int(r2[t + 1])
        if t >= burnin:
            out1[t - burnin] = x1
            out2[t - burnin] = x2
    return SeriesPair(out1, out2)


def theoretical_moments(model: BinarModel) -> MomentSummary:
    """Stationary moments of the BINAR(1) process."""
    m = model.innovations
    lam1, lam2 = mean(m.marginal1), mean(m.marginal2)
    s1, s2 = variance(m.marginal1), variance(m.marginal2)
    a1, a2 = model.alpha1, model.alpha2
    mean1 = lam1 / (1 - a1)
    mean2 = lam2 / (1 - a2)
    var1 = (s1 + a1 * lam1) / (1 - a1**2)
    var2 = (s2 + a2 * lam2) / (1 - a2**2)
    gamma = innovation_covariance(m)
    cross_cov = gamma / (1 - a1 * a2)
    cross_corr = cross_cov / np.sqrt(var1 * var2)
    return MomentSummary(mean1, mean2, var1, var2, a1, a2, cross_cov, cross_corr)


def cls_asymptotic_cov_poisson(alpha: float, lam: float) -> np.ndarray:
    """Asymptotic covariance of sqrt(N)*(CLS estimates - truth) for an
    INAR(1) with Poisson innovations (closed form)."""
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must be in [0, 1), got {alpha}")
    if not lam > 0:
        raise ValueError(f"lam must be positive, got {lam}")
    b11 = alpha * (1 - alpha) ** 2 / lam + 1 - alpha**2
    b12 = -(1 + alpha) * lam
    b22 = lam + (1 + alpha) / (1 - alpha) * lam**2
    return np.array([[b11, b12], [b12, b22]])


def cls_asymptotic_cov_general(alpha: float, m: MarginalSpec) -> np.ndarray:
    """Asymptotic CLS covariance for a general innovation marginal.

    Builds the stationary moments E X, E X^2, E X^3 of the INAR(1) from
    the innovation mean/variance/third moment and assembles
    B = M^{-1} A M^{-1}.
    """
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must be in [0, 1), got {alpha}")
    lam = mean(m)
    s2 = variance(m)
    er3 = third_moment(m)
    ex = lam / (1 - alpha)
    ex2 = (s2 + alpha * lam) / (1 - alpha**2) + lam**2 / (1 - alpha) ** 2
    ex3 = (
        (er3 - 3 * s2 * (1 + lam) - lam**3 + 2 * lam) / (1 - alpha**3)
        + 3 * (s2 + alpha * lam) / (1 - alpha**2)
        - 2 * lam / (1 - alpha)
        + 3 * lam * (s2 + alpha * lam) / ((1 - alpha) * (1 - alpha**2))
        + lam**3 / (1 - alpha) ** 3
    )
    mom = np.array([[ex2, ex], [ex, 1.0]])
    a = alpha * (1 - alpha) * np.array([[ex3, ex2], [ex2, ex]]) + s2 * mom
    det = mom[0, 0] - mom[0, 1] ** 2
    assert det > 0, "moment matrix must be positive definite for lam > 0"
    minv = np.linalg.inv(mom)
    return minv @ a @ minv
