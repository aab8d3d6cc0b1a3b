"""CLS, CML and two-step estimators for copula-based BINAR(1) models.

CLS fits each component's (alpha, lambda) in closed form, then recovers
the dependence parameter by matching the mean product of CLS residuals
to the truncated model covariance of the innovations.  CML maximizes
the one-step conditional likelihood (a double binomial convolution
against the copula joint pmf) over all parameters at once; the
two-step method freezes the CLS marginal estimates and maximizes the
same likelihood over the dependence (and dispersion) parameters only.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.special import expit, gammaln, logit

from .copulas import (
    CopulaSpec,
    InnovationModel,
    adaptive_truncation,
    innovation_covariance,
    joint_pmf_grid,
)
from .distributions import MarginalSpec, cdf
from .optimize import NonconvergenceError, OptimizerSpec, minimize
from .process import BinarModel, SeriesPair, cls_asymptotic_cov_poisson

__all__ = [
    "FamilySpec",
    "FitReport",
    "DegenerateSeriesError",
    "cls_marginal",
    "cls_residual_products",
    "cls_dependence",
    "cls_theta_fgm_closed_form",
    "cls_fit",
    "conditional_loglik",
    "cml_fit",
    "twostep_fit",
    "observed_info_se",
    "fisher_se",
    "aic",
]

_LOG_FLOOR = 1e-300

_ALPHA_HI = 1.0 - 1e-6
_LAMBDA_LO = 1e-8

# finite search boxes for the dependence parameter, per family
THETA_BOUNDS = {
    "product": (0.0, 0.0),
    "fgm": (-1.0, 1.0),
    "frank": (-50.0, 50.0),
    "clayton": (-1.0, 50.0),
}


class DegenerateSeriesError(ValueError):
    """A constant lagged subseries makes the CLS normal equations singular."""


@dataclass(frozen=True)
class FamilySpec:
    """Declared model families for a fit: marginal variants plus copula."""

    marginal1: str  # "poisson" | "negbin"
    marginal2: str
    copula: str  # "product" | "fgm" | "frank" | "clayton"

    def __post_init__(self):
        for v in (self.marginal1, self.marginal2):
            if v not in ("poisson", "negbin"):
                raise ValueError(f"unknown marginal variant: {v!r}")
        if self.copula not in THETA_BOUNDS:
            raise ValueError(f"unknown copula family: {self.copula!r}")

    @property
    def n_negbin(self) -> int:
        return (self.marginal1 == "negbin") + (self.marginal2 == "negbin")

    @classmethod
    def from_code(cls, marginals: str, copula: str) -> "FamilySpec":
        """Parse the CLI shorthand: pp | nbp | pnb | nbnb."""
        table = {
            "pp": ("poisson", "poisson"),
            "nbp": ("negbin", "poisson"),
            "pnb": ("poisson", "negbin"),
            "nbnb": ("negbin", "negbin"),
        }
        if marginals not in table:
            raise ValueError(f"unknown marginal code: {marginals!r}")
        m1, m2 = table[marginals]
        return cls(m1, m2, copula)


@dataclass
class FitReport:
    """The output of every estimator, serializable to JSON."""

    method: str  # "CLS" | "CML" | "TwoStep"
    families: FamilySpec
    alpha1: float
    alpha2: float
    lambda1: float
    lambda2: float
    theta: float
    sigma2_1: float | None = None
    sigma2_2: float | None = None
    loglik: float | None = None
    aic: float | None = None
    n_params_likelihood: int | None = None
    se: dict = field(default_factory=dict)
    raw_flags: list = field(default_factory=list)

    def model(self) -> BinarModel:
        m1 = _marginal(self.families.marginal1, self.lambda1, self.sigma2_1)
        m2 = _marginal(self.families.marginal2, self.lambda2, self.sigma2_2)
        cop = CopulaSpec(self.families.copula, self.theta)
        return BinarModel(self.alpha1, self.alpha2, InnovationModel(m1, m2, cop))

    def param_names(self) -> list[str]:
        names = ["alpha1", "alpha2", "lambda1", "lambda2"]
        if self.families.copula != "product":
            names.append("theta")
        if self.families.marginal1 == "negbin":
            names.append("sigma2_1")
        if self.families.marginal2 == "negbin":
            names.append("sigma2_2")
        return names

    def to_json(self) -> str:
        d = asdict(self)
        d["families"] = asdict(self.families)
        return json.dumps(d, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "FitReport":
        d = json.loads(text)
        d["families"] = FamilySpec(**d["families"])
        return cls(**d)


def _marginal(variant, lam, sigma2):
    if variant == "poisson":
        return MarginalSpec("poisson", lam)
    return MarginalSpec("negbin", lam, sigma2)


def aic(loglik: float, k: int) -> float:
    """Akaike information criterion 2k - 2*loglik."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return 2.0 * k - 2.0 * loglik


# ---------------------------------------------------------------------------
# CLS


@dataclass(frozen=True)
class CLSMarginalFit:
    alpha: float
    lam: float
    cov: np.ndarray  # plug-in asymptotic covariance of the estimates (already / N)
    raw_alpha: float
    raw_lam: float
    flags: tuple = ()


def cls_marginal(x: np.ndarray) -> CLSMarginalFit:
    """Exact least-squares fit of X_t on X_{t-1} for one component.

    The slope uses the respective subsample means of X_2..X_N and
    X_1..X_{N-1} (the exact OLS minimizer).  Estimates outside the
    parameter domain are clamped and flagged; raw values are kept.
    """
    x = np.asarray(x, dtype=float)
    if len(x) < 3:
        raise ValueError("need at least 3 observations for CLS")
    y, z = x[1:], x[:-1]
    szz = np.sum((z - z.mean()) ** 2)
    if szz == 0.0:
        raise DegenerateSeriesError("lagged subseries is constant")
    raw_alpha = float(np.sum((y - y.mean()) * (z - z.mean())) / szz)
    raw_lam = float(y.mean() - raw_alpha * z.mean())
    flags = []
    alpha = raw_alpha
    if not 0.0 <= alpha < 1.0:
        alpha = min(max(alpha, 0.0), _ALPHA_HI)
        flags.append("alpha_clamped")
    lam = raw_lam
    if lam <= 0.0:
        lam = _LAMBDA_LO
        flags.append("lambda_clamped")
    n = len(x)
    cov = cls_asymptotic_cov_poisson(alpha, lam) / n
    return CLSMarginalFit(alpha, lam, cov, raw_alpha, raw_lam, tuple(flags))


def cls_residual_products(
    pair: SeriesPair, fit1: CLSMarginalFit, fit2: CLSMarginalFit
) -> np.ndarray:
    """Per-period products of the two CLS residual series, t = 2..N.

    Their sample mean estimates Cov(R1, R2).
    """
    r1 = pair.x1[1:] - fit1.alpha * pair.x1[:-1] - fit1.lam
    r2 = pair.x2[1:] - fit2.alpha * pair.x2[:-1] - fit2.lam
    return r1 * r2


def cls_theta_fgm_closed_form(
    pair: SeriesPair,
    fit1: CLSMarginalFit,
    fit2: CLSMarginalFit,
    M1: int | None = None,
    M2: int | None = None,
) -> float:
    """Closed-form FGM dependence estimator (Poisson marginals).

    The result is the raw ratio estimator and is NOT clamped to the FGM
    domain [-1, 1].
    """
    m1 = MarginalSpec("poisson", fit1.lam)
    m2 = MarginalSpec("poisson", fit2.lam)
    if M1 is None:
        M1 = adaptive_truncation(m1)
    if M2 is None:
        M2 = adaptive_truncation(m2)
    num = float(np.sum(cls_residual_products(pair, fit1, fit2)))
    denom = (len(pair) - 1) * _fgm_margin_sum(m1, M1) * _fgm_margin_sum(m2, M2)
    if denom == 0.0:
        raise ZeroDivisionError("degenerate marginal cdfs in FGM denominator")
    return num / denom


def _fgm_margin_sum(m: MarginalSpec, M: int) -> float:
    # sum_{k=1..M} k * (F_k(1-F_k) - F_{k-1}(1-F_{k-1}))
    f = cdf(m, np.arange(M + 1))
    g = f * (1.0 - f)
    return float(np.sum(np.arange(1, M + 1) * np.diff(g)))


@dataclass(frozen=True)
class CLSDependenceFit:
    theta: float
    sigma2_1: float | None
    sigma2_2: float | None
    flags: tuple
    evals: int


def _sigma2_moment_init(x: np.ndarray, alpha: float, lam: float) -> float:
    # innovation variance implied by the stationary variance identity
    v = (1.0 - alpha**2) * float(np.var(np.asarray(x, dtype=float), ddof=1)) - alpha * lam
    return v if v > 1.05 * lam else 1.5 * lam


def cls_dependence(
    pair: SeriesPair,
    fit1: CLSMarginalFit,
    fit2: CLSMarginalFit,
    families: FamilySpec,
    opt: OptimizerSpec = OptimizerSpec(),
) -> CLSDependenceFit:
    """Estimate theta (and NegBin variances) by minimizing the sum of
    squared deviations of residual products from the truncated model
    covariance."""
    if families.copula == "product":
        s1 = _sigma2_moment_init(pair.x1, fit1.alpha, fit1.lam) if families.marginal1 == "negbin" else None
        s2 = _sigma2_moment_init(pair.x2, fit2.alpha, fit2.lam) if families.marginal2 == "negbin" else None
        return CLSDependenceFit(0.0, s1, s2, (), 0)

    products = cls_residual_products(pair, fit1, fit2)
    tlo, thi = THETA_BOUNDS[families.copula]
    nb1 = families.marginal1 == "negbin"
    nb2 = families.marginal2 == "negbin"

    def unpack(z):
        theta = z[0]
        i = 1
        s1 = s2 = None
        if nb1:
            s1 = fit1.lam * (1.0 + math.exp(z[i]))
            i += 1
        if nb2:
            s2 = fit2.lam * (1.0 + math.exp(z[i]))
        return theta, s1, s2

    def objective(z):
        theta, s1, s2 = unpack(z)
        model = InnovationModel(
            _marginal(families.marginal1, fit1.lam, s1),
            _marginal(families.marginal2, fit2.lam, s2),
            CopulaSpec(families.copula, theta),
        )
        gamma = innovation_covariance(model)
        return float(np.sum((products - gamma) ** 2))

    theta0 = _theta_init(families.copula, float(np.mean(products)))
    z0 = [theta0]
    bounds = [(tlo, thi)]
    for nb, fit, x in ((nb1, fit1, pair.x1), (nb2, fit2, pair.x2)):
        if nb:
            s0 = _sigma2_moment_init(x, fit.alpha, fit.lam)
            z0.append(math.log(s0 / fit.lam - 1.0))
            bounds.append((-20.0, 20.0))
    z, _, evals = minimize(objective, bounds, z0, opt)
    theta, s1, s2 = unpack(z)
    flags = []
    if abs(theta - tlo) < 1e-6 or abs(theta - thi) < 1e-6:
        flags.append("theta_at_bound")
    return CLSDependenceFit(float(theta), s1, s2, tuple(flags), evals)


def _theta_init(copula: str, mean_product: float) -> float:
    if copula == "fgm":
        return 0.3 if mean_product >= 0 else -0.3
    if copula == "frank":
        return 1.0 if mean_product >= 0 else -1.0
    return 0.5  # clayton


def cls_fit(
    pair: SeriesPair, families: FamilySpec, opt: OptimizerSpec = OptimizerSpec()
) -> FitReport:
    """Full CLS fit: marginal normal equations plus dependence matching."""
    fit1 = cls_marginal(pair.x1)
    fit2 = cls_marginal(pair.x2)
    dep = cls_dependence(pair, fit1, fit2, families, opt)
    n = len(pair)
    se = {
        "alpha1": math.sqrt(fit1.cov[0, 0]),
        "lambda1": math.sqrt(fit1.cov[1, 1]),
        "alpha2": math.sqrt(fit2.cov[0, 0]),
        "lambda2": math.sqrt(fit2.cov[1, 1]),
    }
    flags = [f"x1_{f}" for f in fit1.flags] + [f"x2_{f}" for f in fit2.flags]
    flags += list(dep.flags)
    return FitReport(
        method="CLS",
        families=families,
        alpha1=fit1.alpha,
        alpha2=fit2.alpha,
        lambda1=fit1.lam,
        lambda2=fit2.lam,
        theta=dep.theta,
        sigma2_1=dep.sigma2_1,
        sigma2_2=dep.sigma2_2,
        se=se,
        raw_flags=flags,
    )


# ---------------------------------------------------------------------------
# conditional likelihood


def conditional_loglik(model: BinarModel, pair: SeriesPair) -> float:
    """Log conditional likelihood sum_{t=2..N} log P(X_t | X_{t-1}).

    Each transition probability is the double convolution of the two
    binomial thinning kernels with the copula joint pmf of the
    innovations.  Zero cells are floored at 1e-300.
    """
    terms = _conditional_probs(model, pair)
    return float(np.sum(np.log(np.maximum(terms, _LOG_FLOOR))))


def _conditional_probs(model: BinarModel, pair: SeriesPair) -> np.ndarray:
    x1, x2 = pair.x1, pair.x2
    a_max, b_max = int(x1.max()), int(x2.max())
    grid = joint_pmf_grid(model.innovations, a_max, b_max)
    w1 = _thinning_weights(x1, model.alpha1, a_max)
    w2 = _thinning_weights(x2, model.alpha2, b_max)
    return np.einsum("ta,ab,tb->t", w1, grid, w2)


def _thinning_weights(x: np.ndarray, alpha: float, a_max: int) -> np.ndarray:
    # w[t, a] = P(alpha o x_t = x_{t+1} - a) for a = 0..a_max
    a = np.arange(a_max + 1)
    k = (x[1:, None] - a[None, :]).astype(float)
    n = np.broadcast_to(x[:-1, None], k.shape).astype(float)
    valid = (k >= 0) & (k <= n)
    ks = np.where(valid, k, 0.0)
    if alpha <= 0.0:
        return np.where(valid & (ks == 0), 1.0, 0.0)
    logw = (
        gammaln(n + 1.0)
        - gammaln(ks + 1.0)
        - gammaln(n - ks + 1.0)
        + ks * math.log(alpha)
        + (n - ks) * math.log1p(-alpha)
    )
    return np.where(valid, np.exp(logw), 0.0)


# ---------------------------------------------------------------------------
# CML and two-step


def _z_bounds_marginals(families: FamilySpec):
    za = (logit(1e-6), logit(1.0 - 1e-6))
    zl = (math.log(_LAMBDA_LO), math.log(1e6))
    return [za, za, zl, zl]


def _clip_init(v, lo, hi):
    return min(max(v, lo + 1e-9), hi - 1e-9)


def cml_fit(
    pair: SeriesPair,
    families: FamilySpec,
    init: FitReport | None = None,
    opt: OptimizerSpec = OptimizerSpec(),
    compute_se: bool = True,
) -> FitReport:
    """Maximize the conditional log-likelihood over all parameters.

    Starting values default to the CLS estimates.  Box constraints are
    enforced by monotone reparameterization (logit for alpha, log for
    lambda, log-overdispersion-ratio for sigma2) except for theta,
    which is searched in its family box directly.
    """
    if init is None:
        init = cls_fit(pair, families, opt)
    nb1 = families.marginal1 == "negbin"
    nb2 = families.marginal2 == "negbin"
    with_theta = families.copula != "product"
    tlo, thi = THETA_BOUNDS[families.copula]

    def unpack(z):
        a1, a2 = expit(z[0]), expit(z[1])
        l1, l2 = math.exp(z[2]), math.exp(z[3])
        i = 4
        theta = 0.0
        if with_theta:
            theta = z[i]
            i += 1
        s1 = s2 = None
        if nb1:
            s1 = l1 * (1.0 + math.exp(z[i]))
            i += 1
        if nb2:
            s2 = l2 * (1.0 + math.exp(z[i]))
        return a1, a2, l1, l2, theta, s1, s2

    def build(z):
        a1, a2, l1, l2, theta, s1, s2 = unpack(z)
        return BinarModel(
            a1,
            a2,
            InnovationModel(
                _marginal(families.marginal1, l1, s1),
                _marginal(families.marginal2, l2, s2),
                CopulaSpec(families.copula, theta),
            ),
        )

    def objective(z):
        return -conditional_loglik(build(z), pair)

    z0 = [
        logit(_clip_init(init.alpha1, 1e-6, 1.0 - 1e-6)),
        logit(_clip_init(init.alpha2, 1e-6, 1.0 - 1e-6)),
        math.log(max(init.lambda1, _LAMBDA_LO * 2)),
        math.log(max(init.lambda2, _LAMBDA_LO * 2)),
    ]
    bounds = _z_bounds_marginals(families)
    if with_theta:
        z0.append(_clip_init(init.theta, tlo, thi))
        bounds.append((tlo, thi))
    for nb, lam, sig in ((nb1, init.lambda1, init.sigma2_1), (nb2, init.lambda2, init.sigma2_2)):
        if nb:
            s0 = sig if sig is not None and sig > 1.01 * lam else 1.5 * lam
            z0.append(math.log(s0 / lam - 1.0))
            bounds.append((-20.0, 20.0))

    z, fval, _ = minimize(objective, bounds, z0, opt)
    a1, a2, l1, l2, theta, s1, s2 = unpack(z)
    k = 4 + int(with_theta) + nb1 + nb2
    loglik = -fval
    report = FitReport(
        method="CML",
        families=families,
        alpha1=float(a1),
        alpha2=float(a2),
        lambda1=float(l1),
        lambda2=float(l2),
        theta=float(theta),
        sigma2_1=s1,
        sigma2_2=s2,
        loglik=loglik,
        aic=aic(loglik, k),
        n_params_likelihood=k,
    )
    if with_theta and (abs(theta - tlo) < 1e-6 or abs(theta - thi) < 1e-6):
        report.raw_flags.append("theta_at_bound")
    if compute_se:
        _attach_se(report, pair)
    return report


def twostep_fit(
    pair: SeriesPair,
    families: FamilySpec,
    opt: OptimizerSpec = OptimizerSpec(),
    compute_se: bool = True,
) -> FitReport:
    """CLS for the marginals, then CML over the dependence parameters
    with the first-step estimates frozen.

    AIC counts only the second-step parameters, mirroring the reporting
    convention for this method.
    """
    fit1 = cls_marginal(pair.x1)
    fit2 = cls_marginal(pair.x2)
    dep0 = cls_dependence(pair, fit1, fit2, families, opt)
    nb1 = families.marginal1 == "negbin"
    nb2 = families.marginal2 == "negbin"
    with_theta = families.copula != "product"
    tlo, thi = THETA_BOUNDS[families.copula]

    def unpack(z):
        i = 0
        theta = 0.0
        if with_theta:
            theta = z[i]
            i += 1
        s1 = s2 = None
        if nb1:
            s1 = fit1.lam * (1.0 + math.exp(z[i]))
            i += 1
        if nb2:
            s2 = fit2.lam * (1.0 + math.exp(z[i]))
        return theta, s1, s2

    def build(z):
        theta, s1, s2 = unpack(z)
        return BinarModel(
            fit1.alpha,
            fit2.alpha,
            InnovationModel(
                _marginal(families.marginal1, fit1.lam, s1),
                _marginal(families.marginal2, fit2.lam, s2),
                CopulaSpec(families.copula, theta),
            ),
        )

    z0, bounds = [], []
    if with_theta:
        z0.append(_clip_init(dep0.theta, tlo, thi))
        bounds.append((tlo, thi))
    for nb, fit, sig in ((nb1, fit1, dep0.sigma2_1), (nb2, fit2, dep0.sigma2_2)):
        if nb:
            s0 = sig if sig is not None and sig > 1.01 * fit.lam else 1.5 * fit.lam
            z0.append(math.log(s0 / fit.lam - 1.0))
            bounds.append((-20.0, 20.0))
    k = len(z0)
    if k == 0:
        # product copula with Poisson marginals: nothing to estimate
        model = build([])
        loglik = conditional_loglik(model, pair)
        return FitReport(
            method="TwoStep",
            families=families,
            alpha1=fit1.alpha,
            alpha2=fit2.alpha,
            lambda1=fit1.lam,
            lambda2=fit2.lam,
            theta=0.0,
            loglik=loglik,
            aic=None,
            n_params_likelihood=0,
        )

    def objective(z):
        return -conditional_loglik(build(z), pair)

    z, fval, _ = minimize(objective, bounds, z0, opt)
    theta, s1, s2 = unpack(z)
    loglik = -fval
    report = FitReport(
        method="TwoStep",
        families=families,
        alpha1=fit1.alpha,
        alpha2=fit2.alpha,
        lambda1=fit1.lam,
        lambda2=fit2.lam,
        theta=float(theta),
        sigma2_1=s1,
        sigma2_2=s2,
        loglik=loglik,
        aic=aic(loglik, k),
        n_params_likelihood=k,
    )
    if with_theta and (abs(theta - tlo) < 1e-6 or abs(theta - thi) < 1e-6):
        report.raw_flags.append("theta_at_bound")
    if compute_se:
        _attach_se(report, pair)
    return report


# ---------------------------------------------------------------------------
# standard errors


def fisher_se(loglik_fn, x: np.ndarray, names: list[str] | None = None) -> dict:
    """Standard errors from the observed Fisher information.

    Central finite-difference Hessian of ``loglik_fn`` at ``x`` with
    per-coordinate steps max(1e-4*|x_i|, 1e-5); SEs are the square
    roots of the diagonal of the inverse negative Hessian.
    """
    x = np.asarray(x, dtype=float)
    p = len(x)
    h = np.maximum(1e-4 * np.abs(x), 1e-5)
    hess = np.empty((p, p))
    for i in range(p):
        ei = np.zeros(p)
        ei[i] = h[i]
        hess[i, i] = (loglik_fn(x + ei) - 2.0 * loglik_fn(x) + loglik_fn(x - ei)) / h[i] ** 2
        for j in range(i + 1, p):
            ej = np.zeros(p)
            ej[j] = h[j]
            hess[i, j] = hess[j, i] = (
                loglik_fn(x + ei + ej)
                - loglik_fn(x + ei - ej)
                - loglik_fn(x - ei + ej)
                + loglik_fn(x - ei - ej)
            ) / (4.0 * h[i] * h[j])
    info = -hess
    eigs = np.linalg.eigvalsh(info)
    if eigs.min() <= 0:
        raise ValueError("observed information is not positive definite (non-interior optimum?)")
    variances = np.diag(np.linalg.inv(info))
    ses = np.sqrt(variances)
    if names is None:
        names = [f"x{i}" for i in range(p)]
    return dict(zip(names, ses.tolist()))


def observed_info_se(fit: FitReport, pair: SeriesPair) -> dict:
    """Observed-information SEs for the likelihood-step parameters of a
    CML or two-step fit.

    Two-step SEs treat the first-step (alpha, lambda) values as known.
    Fits with theta pinned at a family bound are refused.
    """
    if fit.method not in ("CML", "TwoStep"):
        raise ValueError("observed-information SEs require a CML or two-step fit")
    if "theta_at_bound" in fit.raw_flags:
        raise ValueError("theta pinned at a family bound; Hessian-based SEs are undefined")
    names = _likelihood_param_names(fit)
    x0 = np.array([getattr(fit, n) for n in names], dtype=float)

    def loglik_fn(x):
        rep = _replace_params(fit, names, x)
        return conditional_loglik(rep.model(), pair)

    return fisher_se(loglik_fn, x0, names)


def _likelihood_param_names(fit: FitReport) -> list[str]:
    names = []
    if fit.method == "CML":
        names += ["alpha1", "alpha2", "lambda1", "lambda2"]
    if fit.families.copula != "product":
        names.append("theta")
    if fit.families.marginal1 == "negbin":
        names.append("sigma2_1")
    if fit.families.marginal2 == "negbin":
        names.append("sigma2_2")
    return names


def _replace_params(fit: FitReport, names, values) -> FitReport:
    d = {n: v for n, v in zip(names, values)}
    return FitReport(
        method=fit.method,
        families=fit.families,
        alpha1=d.get("alpha1", fit.alpha1),
        alpha2=d.get("alpha2", fit.alpha2),
        lambda1=d.get("lambda1", fit.lambda1),
        lambda2=d.get("lambda2", fit.lambda2),
        theta=d.get("theta", fit.theta),
        sigma2_1=d.get("sigma2_1", fit.sigma2_1),
        sigma2_2=d.get("sigma2_2", fit.sigma2_2),
    )


def _attach_se(report: FitReport, pair: SeriesPair) -> None:
    try:
        report.se = observed_info_se(report, pair)
    except (ValueError, np.linalg.LinAlgError) as exc:
        report.se = {}
        report.raw_flags.append(f"se_unavailable: {exc}")
