"""Bivariate copulas over discrete marginals.

Families: product (independence), FGM, Frank and Clayton.  The joint
pmf of a pair of count innovations is obtained from the copula cdf by
the four-term rectangle difference over the marginal cdfs, with the
convention F(-1) = 0.  Sampling uses conditional inversion: draw
(U1, V) uniform, solve dC/du1(U1, U2) = V for U2, then push both
through the marginal quantile functions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import MarginalSpec, cdf, pmf, quantile

__all__ = [
    "CopulaSpec",
    "InnovationModel",
    "copula_cdf",
    "copula_du1",
    "conditional_quantile",
    "joint_pmf",
    "joint_pmf_grid",
    "sample_innovations",
    "sample_innovation_pair",
    "innovation_covariance",
]

# |theta| below this is evaluated as the product copula (Frank and
# Clayton are continuous through 0 in the limit; optimizers probe there)
_THETA_ZERO = 1e-6

# rectangle differences of nearly-equal cdfs can go this far negative
# before we call the copula implementation broken
_PMF_CLAMP = 1e-12

_FAMILIES = ("product", "fgm", "frank", "clayton")


@dataclass(frozen=True)
class CopulaSpec:
    """Copula family tag plus dependence parameter theta."""

    family: str
    theta: float = 0.0

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown copula family: {self.family!r}")
        t = self.theta
        if self.family == "fgm" and not -1.0 <= t <= 1.0:
            raise ValueError(f"FGM theta must be in [-1, 1], got {t}")
        if self.family == "clayton" and t < -1.0:
            raise ValueError(f"Clayton theta must be in [-1, inf), got {t}")
        if self.family == "product" and t != 0.0:
            raise ValueError("product copula takes no theta")


@dataclass(frozen=True)
class InnovationModel:
    """Two count marginals joined by a copula."""

    marginal1: MarginalSpec
    marginal2: MarginalSpec
    copula: CopulaSpec


def copula_cdf(c: CopulaSpec, u1, u2):
    """C(u1, u2; theta); vectorizes over u1, u2."""
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    th = c.theta
    fam = c.family if abs(c.theta) >= _THETA_ZERO else "product"
    if fam == "product":
        out = u1 * u2
    elif fam == "fgm":
        out = u1 * u2 * (1.0 + th * (1.0 - u1) * (1.0 - u2))
    elif fam == "frank":
        # grouped so both addends carry the sign of theta; the naive
        # expm1-product form cancels catastrophically for |theta| ~ 50
        s = -np.exp(-th * u1) * np.expm1(-th * u2) - np.exp(-th * u2) * np.expm1(
            -th * (1.0 - u2)
        )
        out = -np.log(-s / np.expm1(-th)) / th
    else:  # clayton
        with np.errstate(divide="ignore", over="ignore"):
            s = u1 ** (-th) + u2 ** (-th) - 1.0
            s_safe = np.where(s > 0, s, 1.0)
            out = np.where(s > 0, s_safe ** (-1.0 / th), 0.0)
    return out if out.ndim else float(out)


def copula_du1(c: CopulaSpec, u1, u2):
    """Conditional cdf dC/du1(u1, u2), the cdf of U2 given U1 = u1."""
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    th = c.theta
    fam = c.family if abs(c.theta) >= _THETA_ZERO else "product"
    if fam == "product":
        out = u2 + 0.0 * u1
    elif fam == "fgm":
        out = u2 * (1.0 + th * (1.0 - 2.0 * u1) * (1.0 - u2))
    elif fam == "frank":
        # same cancellation-free grouping as the cdf
        s = -np.exp(-th * u1) * np.expm1(-th * u2) - np.exp(-th * u2) * np.expm1(
            -th * (1.0 - u2)
        )
        out = -np.exp(-th * u1) * np.expm1(-th * u2) / s
    else:  # clayton
        with np.errstate(divide="ignore", over="ignore"):
            s = u1 ** (-th) + u2 ** (-th) - 1.0
            s_safe = np.where(s > 0, s, 1.0)
            out = np.where(
                s > 0,
                u1 ** (-th - 1.0) * s_safe ** (-(1.0 + th) / th),
                0.0,
            )
    return out if out.ndim else float(out)


def conditional_quantile(c: CopulaSpec, u1, v):
    """Solve dC/du1(u1, u2) = v for u2; vectorizes over u1, v.

    Closed forms exist for FGM, Frank and Clayton with theta > 0; the
    remaining cases (Clayton theta < 0) fall back to bisection.
    """
    u1 = np.asarray(u1, dtype=float)
    v = np.asarray(v, dtype=float)
    th = c.theta
    fam = c.family if abs(c.theta) >= _THETA_ZERO else "product"
    if fam == "product":
        out = v + 0.0 * u1
    elif fam == "fgm":
        a = th * (1.0 - 2.0 * u1)
        disc = (1.0 + a) ** 2 - 4.0 * a * v
        with np.errstate(invalid="ignore", divide="ignore"):
            root = (1.0 + a - np.sqrt(np.maximum(disc, 0.0))) / (2.0 * a)
        out = np.where(np.abs(a) < 1e-9, v, root)
    elif fam == "frank":
        # both log arguments are sums of positive terms for either sign
        # of theta, so no cancellation anywhere in the box |theta| <= 50
        e1 = np.exp(-th * u1)
        out = (
            -(np.log(e1 * (1.0 - v) + np.exp(-th) * v) - np.log(e1 * (1.0 - v) + v)) / th
        )
    elif fam == "clayton" and th > 0:
        out = ((v ** (-th / (1.0 + th)) - 1.0) * u1 ** (-th) + 1.0) ** (-1.0 / th)
    else:
        out = _bisect_conditional(c, u1, v)
    out = np.clip(out, 0.0, 1.0)
    return out if out.ndim else float(out)


def _bisect_conditional(c, u1, v, tol=1e-12):
    u1 = np.atleast_1d(np.asarray(u1, dtype=float))
    v = np.atleast_1d(np.asarray(v, dtype=float))
    u1, v = np.broadcast_arrays(u1, v)
    lo = np.zeros(u1.shape)
    hi = np.ones(u1.shape)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        too_low = copula_du1(c, u1, mid) < v
        lo = np.where(too_low, mid, lo)
        hi = np.where(too_low, hi, mid)
        if np.max(hi - lo) < tol:
            break
    return 0.5 * (lo + hi)


def joint_pmf(m: InnovationModel, k: int, l: int) -> float:
    """P(R1 = k, R2 = l) via the rectangle rule on C(F1, F2)."""
    if k < 0 or l < 0:
        return 0.0
    c = m.copula
    f1k, f1km = cdf(m.marginal1, k), cdf(m.marginal1, k - 1)
    f2l, f2lm = cdf(m.marginal2, l), cdf(m.marginal2, l - 1)
    p = (
        copula_cdf(c, f1k, f2l)
        - copula_cdf(c, f1km, f2l)
        - copula_cdf(c, f1k, f2lm)
        + copula_cdf(c, f1km, f2lm)
    )
    return _clamp(p)


def joint_pmf_grid(m: InnovationModel, kmax: int, lmax: int) -> np.ndarray:
    """Matrix of P(R1 = k, R2 = l) for k in 0..kmax, l in 0..lmax."""
    f1 = np.concatenate(([0.0], cdf(m.marginal1, np.arange(kmax + 1))))
    f2 = np.concatenate(([0.0], cdf(m.marginal2, np.arange(lmax + 1))))
    cc = copula_cdf(m.copula, f1[:, None], f2[None, :])
    p = cc[1:, 1:] - cc[:-1, 1:] - cc[1:, :-1] + cc[:-1, :-1]
    return _clamp(p)


def _clamp(p):
    bad = np.min(p)
    if bad < -_PMF_CLAMP:
        raise ValueError(f"joint pmf cell {bad} below clamping tolerance; copula cdf is broken")
    return np.maximum(p, 0.0) if np.ndim(p) else max(float(p), 0.0)


def sample_innovations(m: InnovationModel, n: int, rng: np.random.Generator):
    """Draw n i.i.d. innovation pairs; returns two int arrays of length n."""
    u1 = rng.random(n)
    v = rng.random(n)
    u2 = np.atleast_1d(conditional_quantile(m.copula, u1, v))
    r1 = _ppf_correct(m.marginal1, m.marginal1._ppf(u1).astype(int), u1)
    r2 = _ppf_correct(m.marginal2, m.marginal2._ppf(u2).astype(int), u2)
    return r1, r2


def _ppf_correct(m, k, u):
    # enforce the left-continuous generalized inverse against ppf fuzz
    k = np.maximum(k, 0)
    down = (k > 0) & (cdf(m, k - 1) >= u)
    k = np.where(down, k - 1, k)
    up = cdf(m, k) < u
    k = np.where(up, k + 1, k)
    return k


def sample_innovation_pair(m: InnovationModel, rng: np.random.Generator) -> tuple[int, int]:
    """One draw of (R1, R2) by conditional inversion."""
    r1, r2 = sample_innovations(m, 1, rng)
    return int(r1[0]), int(r2[0])


def adaptive_truncation(m: MarginalSpec, eps: float = 1e-10, cap: int = 500) -> int:
    """Grid bound M = quantile(1 - eps), at least 1, capped."""
    return max(1, min(quantile(m, 1.0 - eps), cap))


def innovation_covariance(m: InnovationModel, M1: int | None = None, M2: int | None = None) -> float:
    """Truncated covariance sum_{k,l=1..M} k*l*pmf(k,l) - lam1*lam2.

    When M1/M2 are omitted they adapt to quantile(1 - 1e-10) of the
    corresponding marginal.
    """
    if M1 is None:
        M1 = adaptive_truncation(m.marginal1)
    if M2 is None:
        M2 = adaptive_truncation(m.marginal2)
    if M1 < 1 or M2 < 1:
        raise ValueError("truncation bounds must be >= 1")
    p = joint_pmf_grid(m, M1, M2)
    k = np.arange(M1 + 1)
    l = np.arange(M2 + 1)
    return float(k @ p @ l - m.marginal1.lam * m.marginal2.lam)
