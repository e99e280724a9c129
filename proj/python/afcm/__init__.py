"""Bivariate accelerated-failure conditional models.

Thin python surface over the C++ core: model construction and evaluation,
MCMC sampling, moment/likelihood estimation and AIC comparison.
"""

from ._afcm import (
    AfcModel,
    DependenceSpec,
    Direction,
    Family,
    WeibullParams,
    __version__,
    family_density,
    family_quantile,
    family_survival,
    fit_families,
    hoeffding_covariance,
    mle,
    mme,
    pearson,
    rho_max,
    sample,
    wald_ci,
    weibull_density,
    weibull_quantile,
    weibull_survival,
)

__all__ = [
    "AfcModel",
    "DependenceSpec",
    "Direction",
    "Family",
    "WeibullParams",
    "__version__",
    "family_density",
    "family_quantile",
    "family_survival",
    "fit_families",
    "hoeffding_covariance",
    "mle",
    "mme",
    "pearson",
    "rho_max",
    "sample",
    "wald_ci",
    "weibull_density",
    "weibull_quantile",
    "weibull_survival",
]
