"""Weibull-R distribution family.

Compose a Weibull(c, gamma) outer law with an arbitrary baseline R through
its cumulative hazard H_R(x) = -log(1 - F_R(x)):

    survival(x) = exp(-[H_R(x)/gamma]^c)

The package provides density/CDF/hazard/quantile evaluation and sampling,
moments and Shannon entropy through a u-substitution expectation engine,
stress-strength reliability, upper-record-value densities, and
maximum-likelihood fitting, plus a CLI (``weibull-r``).
"""

from ._accel import NUMBA_ENABLED
from .baselines import (
    BaselineDistribution,
    Cauchy,
    Exponential,
    Lomax,
    Normal,
    Pareto,
    Support,
    Weibull,
    make_baseline,
)
from .core import RandomSource, TailAsymptote, WeibullRDist, WeibullRParams
from .errors import (
    CancellationError,
    ConvergenceError,
    DivergenceError,
    DomainError,
    FitError,
    NumericalError,
    ParameterError,
    SeriesDomainError,
    WeibullRError,
)
from .expectation import (
    ExpectationResult,
    QuadratureSpec,
    discrimination_D,
    expect,
    moment,
    shannon_entropy,
)
from .fit import FitResult, FitSpec, fit_mle, fit_spec_from_text, fit_spec_to_text, log_likelihood
from .records import (
    RecordQuery,
    joint_record_pdf,
    record_marginal_pdf_closed,
    record_marginal_pdf_series,
    sample_records,
)
from .reliability import ReliabilityQuery, reliability, reliability_quadrature, reliability_series
from . import specfun

__version__ = "0.1.0"

__all__ = [
    "NUMBA_ENABLED",
    "__version__",
    # baselines
    "Support", "BaselineDistribution", "Pareto", "Lomax", "Cauchy", "Normal",
    "Weibull", "Exponential", "make_baseline",
    # core
    "WeibullRParams", "WeibullRDist", "RandomSource", "TailAsymptote",
    # expectation
    "QuadratureSpec", "ExpectationResult", "expect", "moment",
    "shannon_entropy", "discrimination_D",
    # reliability
    "ReliabilityQuery", "reliability", "reliability_series", "reliability_quadrature",
    # records
    "RecordQuery", "joint_record_pdf", "record_marginal_pdf_closed",
    "record_marginal_pdf_series", "sample_records",
    # fit
    "FitSpec", "FitResult", "log_likelihood", "fit_mle",
    "fit_spec_from_text", "fit_spec_to_text",
    # errors
    "WeibullRError", "DomainError", "ParameterError", "NumericalError",
    "DivergenceError", "CancellationError", "ConvergenceError",
    "SeriesDomainError", "FitError",
    # modules
    "specfun",
]
