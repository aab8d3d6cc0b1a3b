"""Univariate count marginals and two reference bivariate count distributions.

The marginals are Poisson(lambda) and the negative binomial in its
(mean, variance) parameterization, i.e. NegBin(lambda, sigma2) with
sigma2 > lambda.  The bivariate Poisson and bivariate negative binomial
pmfs are provided as reference distributions for cross-checking the
copula machinery; the estimators never use them directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats
from scipy.special import betainc, gammaln, pdtr

__all__ = [
    "MarginalSpec",
    "pmf",
    "cdf",
    "quantile",
    "mean",
    "variance",
    "third_moment",
    "bivpoisson_pmf",
    "bivnegbin_pmf",
]

# hard cap on series truncations (NegBin third moment, adaptive grids)
_MAX_TERMS = 100_000


@dataclass(frozen=True)
class MarginalSpec:
    """An innovation marginal: ``Poisson(lam)`` or ``NegBin(lam, sigma2)``.

    ``lam`` is the mean; for the negative binomial ``sigma2`` is the
    variance and must exceed the mean (overdispersion).
    """

    variant: str  # "poisson" | "negbin"
    lam: float
    sigma2: float | None = None

    def __post_init__(self):
        if self.variant not in ("poisson", "negbin"):
            raise ValueError(f"unknown marginal variant: {self.variant!r}")
        if not self.lam > 0:
            raise ValueError(f"lam must be positive, got {self.lam}")
        if self.variant == "negbin":
            if self.sigma2 is None:
                raise ValueError("NegBin marginal requires sigma2")
            if not self.sigma2 > self.lam:
                raise ValueError(
                    f"NegBin requires sigma2 > lam, got sigma2={self.sigma2}, lam={self.lam}"
                )
        elif self.sigma2 is not None:
            raise ValueError("sigma2 is only meaningful for NegBin marginals")

    def _nbinom_params(self):
        # size r = lam^2/(sigma2-lam), success prob p = lam/sigma2
        r = self.lam**2 / (self.sigma2 - self.lam)
        p = self.lam / self.sigma2
        return r, p

    def _ppf(self, u):
        if self.variant == "poisson":
            return stats.poisson.ppf(u, self.lam)
        return stats.nbinom.ppf(u, *self._nbinom_params())


def pmf(m: MarginalSpec, k):
    """P(X = k) for integer k >= 0; vectorizes over ``k``.

    Evaluated in log space via log-gamma and exponentiated at the end.
    """
    k = np.asarray(k, dtype=float)
    valid = k >= 0
    ksafe = np.where(valid, k, 0.0)
    if m.variant == "poisson":
        logp = ksafe * np.log(m.lam) - m.lam - gammaln(ksafe + 1.0)
    else:
        r, p = m._nbinom_params()
        logp = (
            gammaln(ksafe + r)
            - gammaln(r)
            - gammaln(ksafe + 1.0)
            + r * np.log(p)
            + ksafe * np.log1p(-p)
        )
    out = np.where(valid, np.exp(logp), 0.0)
    return out if out.ndim else float(out)


def cdf(m: MarginalSpec, k):
    """P(X <= k); defined for any integer k, with cdf(-1) = 0."""
    k = np.asarray(k, dtype=float)
    valid = k >= 0
    ksafe = np.where(valid, k, 0.0)
    if m.variant == "poisson":
        val = pdtr(ksafe, m.lam)
    else:
        r, p = m._nbinom_params()
        val = betainc(r, ksafe + 1.0, p)
    out = np.where(valid, val, 0.0)
    return out if out.ndim else float(out)


def quantile(m: MarginalSpec, u: float) -> int:
    """Generalized inverse min{k >= 0 : cdf(k) >= u}, for u in [0, 1).

    The scipy ppf value is used as a starting point and then corrected
    by a local scan so the generalized-inverse property holds exactly.
    """
    if u >= 1.0:
        raise ValueError("quantile undefined at u >= 1 (unbounded support)")
    if u <= 0.0:
        return 0
    k = int(m._ppf(u))
    k = max(k, 0)
    # correct for floating fuzz in ppf: enforce cdf(k) >= u > cdf(k-1)
    while k > 0 and cdf(m, k - 1) >= u:
        k -= 1
    while cdf(m, k) < u:
        k += 1
    return k


def mean(m: MarginalSpec) -> float:
    return m.lam


def variance(m: MarginalSpec) -> float:
    return m.lam if m.variant == "poisson" else m.sigma2


def third_moment(m: MarginalSpec) -> float:
    """E X^3.

    Poisson has the closed form lam^3 + 3 lam^2 + lam.  The negative
    binomial is summed term by term until the tail mass drops below
    1e-12 (capped at 1e5 terms).
    """
    if m.variant == "poisson":
        lam = m.lam
        return lam**3 + 3 * lam**2 + lam
    cap = min(quantile(m, 1 - 1e-12), _MAX_TERMS)
    k = np.arange(cap + 1)
    return float(np.sum(k**3 * pmf(m, k)))


def bivpoisson_pmf(k: int, l: int, lambda1: float, lambda2: float, lam: float) -> float:
    """Joint pmf of the bivariate Poisson with marginal means lambda1,
    lambda2 and covariance ``lam``, 0 <= lam < min(lambda1, lambda2)."""
    if not (lambda1 > 0 and lambda2 > 0):
        raise ValueError("lambda1, lambda2 must be positive")
    if not (0 <= lam < min(lambda1, lambda2)):
        raise ValueError("need 0 <= lam < min(lambda1, lambda2)")
    if k < 0 or l < 0:
        return 0.0
    i = np.arange(min(k, l) + 1)
    a, b = lambda1 - lam, lambda2 - lam
    with np.errstate(divide="ignore"):
        logterms = (
            (k - i) * np.log(a)
            + (l - i) * np.log(b)
            + np.where(i > 0, i * np.log(lam) if lam > 0 else -np.inf, 0.0)
            - gammaln(k - i + 1)
            - gammaln(l - i + 1)
            - gammaln(i + 1)
        )
    return float(np.exp(logterms - (lambda1 + lambda2 - lam)).sum())


def bivnegbin_pmf(k: int, l: int, lambda1: float, lambda2: float, beta: float) -> float:
    """Joint pmf of the bivariate negative binomial with marginal means
    lambda1, lambda2, overdispersion beta and covariance lambda1*lambda2/beta."""
    if not (lambda1 > 0 and lambda2 > 0 and beta > 0):
        raise ValueError("all parameters must be positive")
    if k < 0 or l < 0:
        return 0.0
    s = lambda1 + lambda2 + beta
    logp = (
        gammaln(beta + k + l)
        - gammaln(beta)
        - gammaln(k + 1)
        - gammaln(l + 1)
        + k * np.log(lambda1 / s)
        + l * np.log(lambda2 / s)
        + beta * np.log(beta / s)
    )
    return float(np.exp(logp))
