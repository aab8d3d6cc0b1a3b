"""Copula-based bivariate integer-valued autoregressive (BINAR(1)) toolkit.

Simulation, conditional least squares / conditional maximum likelihood /
two-step estimation, asymptotic and observed-information standard
errors, and a Monte Carlo harness for estimator comparison.
"""

from .copulas import (
    CopulaSpec,
    InnovationModel,
    conditional_quantile,
    copula_cdf,
    innovation_covariance,
    joint_pmf,
    joint_pmf_grid,
    sample_innovation_pair,
    sample_innovations,
)
from .distributions import (
    MarginalSpec,
    bivnegbin_pmf,
    bivpoisson_pmf,
    cdf,
    pmf,
    quantile,
    third_moment,
)
from .estimation import (
    FamilySpec,
    FitReport,
    aic,
    cls_dependence,
    cls_fit,
    cls_marginal,
    cls_residual_products,
    cls_theta_fgm_closed_form,
    cml_fit,
    conditional_loglik,
    observed_info_se,
    twostep_fit,
)
from .mc import MCConfig, MCReport, bias_se, run_mc
from .optimize import NonconvergenceError, OptimizerSpec, minimize
from .process import (
    BinarModel,
    MomentSummary,
    SeriesPair,
    cls_asymptotic_cov_general,
    cls_asymptotic_cov_poisson,
    simulate,
    theoretical_moments,
    thin,
)
from .tsstats import acf, pacf, summary_stats

__version__ = "0.1.0"
