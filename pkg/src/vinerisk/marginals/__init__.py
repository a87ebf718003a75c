"""Heavy-tailed marginal families: density, CDF, quantile, fitting, GoF."""

from .fitting import (
    cvm_distance,
    fit_by_cvm,
    fit_family,
    fit_hyperbolic,
    fitted_model,
    select_marginal,
)
from .gof import GofResult, ad_statistic, gof_all, gof_test, ks_statistic
from .hyperbolic import Hyperbolic, HyperbolicParams
from .meixner import Meixner, MeixnerParams
from .model import FAMILIES, MarginalModel, make_params
from .stable import Stable, StableParams

__all__ = [
    "FAMILIES",
    "GofResult",
    "Hyperbolic",
    "HyperbolicParams",
    "MarginalModel",
    "Meixner",
    "MeixnerParams",
    "Stable",
    "StableParams",
    "ad_statistic",
    "cvm_distance",
    "fit_by_cvm",
    "fit_family",
    "fit_hyperbolic",
    "fitted_model",
    "gof_all",
    "gof_test",
    "ks_statistic",
    "make_params",
    "select_marginal",
]
