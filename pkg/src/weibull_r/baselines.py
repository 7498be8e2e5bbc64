"""Baseline distributions and the capability bundle the composed law consumes.

Every family implements three closed forms — ``log_survival``, its inverse
``inv_log_survival`` and ``log_pdf`` — and everything else (cdf, survival,
hazard, quantile) derives from them.  The composition layer never forms
``1 - cdf``: tail behaviour of the composed distribution is controlled
entirely by how accurately a family can report ``log(1 - F(x))``, so that
quantity is the primary contract here.

Supports are open intervals.  Evaluating a density or hazard exactly at a
finite endpoint returns the one-sided limit; strictly outside, densities are
zero and domain-checked operations raise :class:`DomainError`.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DomainError, ParameterError

__all__ = [
    "Support",
    "BaselineDistribution",
    "Pareto",
    "Lomax",
    "Cauchy",
    "Normal",
    "Weibull",
    "Exponential",
    "make_baseline",
    "FAMILIES",
]

_PI = math.pi
_LOG_PI = math.log(math.pi)
_LOG_HALF = math.log(0.5)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class Support:
    """Open interval (lower, upper); either end may be infinite."""

    lower: float
    upper: float

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ParameterError(f"support requires lower < upper, got {self}")


def _positive(name, value):
    value = float(value)
    if not (math.isfinite(value) and value > 0.0):
        raise ParameterError(f"{name} must be positive and finite, got {value}")
    return value


def _finite(name, value):
    value = float(value)
    if not math.isfinite(value):
        raise ParameterError(f"{name} must be finite, got {value}")
    return value


def _asarray(x):
    arr = np.asarray(x, dtype=np.float64)
    return arr, arr.ndim == 0


def _ret(arr, scalar):
    return float(arr) if scalar else arr


class BaselineDistribution:
    """Capability bundle for the inner law R.

    Subclasses provide ``_log_survival``, ``_inv_log_survival`` and
    ``_log_pdf`` (vectorized, valid on the closed support hull) plus
    ``support()``; the base class supplies the derived operations and the
    domain checks.  Instances are immutable after construction and safe to
    share across threads.
    """

    _param_names: tuple = ()

    def support(self) -> Support:
        raise NotImplementedError

    def _log_survival(self, x):
        raise NotImplementedError

    def _inv_log_survival(self, ls):
        raise NotImplementedError

    def _log_pdf(self, x):
        raise NotImplementedError

    def _log_cdf(self, x):
        # log F(x); overridden where the left tail needs more range than
        # -expm1(log_survival) can represent
        with np.errstate(all="ignore"):
            return np.log(-np.expm1(self._log_survival(x)))

    # derivative of log f_R, used by the mode equation; numeric fallback
    def _log_pdf_dx(self, x):
        h = np.maximum(np.abs(x), 1.0) * 1e-6
        lo = self.support().lower
        if np.isfinite(lo):
            h = np.minimum(h, np.maximum((x - lo) * 0.5, 1e-300))
        return (self._log_pdf(x + h) - self._log_pdf(x - h)) / (2.0 * h)

    def params(self) -> dict:
        return {name: getattr(self, name) for name in self._param_names}

    def _check_in_support(self, arr, what):
        if np.any(np.isnan(arr)):
            raise DomainError(f"{what}: NaN evaluation point")
        sup = self.support()
        bad_lo = arr < sup.lower
        bad_hi = arr > sup.upper
        if np.any(bad_lo) or np.any(bad_hi):
            bad = np.atleast_1d(arr)[np.atleast_1d(bad_lo | bad_hi)][0]
            raise DomainError(
                f"{what}: point {bad} outside support "
                f"({sup.lower}, {sup.upper}) of {type(self).__name__}"
            )

    # --- log-scale primitives (domain-checked) ---

    def log_survival(self, x):
        """log(1 - F(x)) by the family's closed form; never via 1 - cdf."""
        arr, scalar = _asarray(x)
        self._check_in_support(arr, "log_survival")
        with np.errstate(all="ignore"):
            out = self._log_survival(arr)
        return _ret(out, scalar)

    def inv_log_survival(self, ls):
        """x such that log_survival(x) == ls, for ls <= 0."""
        arr, scalar = _asarray(ls)
        if np.any(np.isnan(arr)) or np.any(arr > 0.0):
            raise DomainError(f"inv_log_survival requires ls <= 0, got {ls}")
        with np.errstate(all="ignore"):
            out = self._inv_log_survival(arr)
        return _ret(out, scalar)

    def log_pdf(self, x):
        arr, scalar = _asarray(x)
        if np.any(np.isnan(arr)):
            raise DomainError("log_pdf: NaN evaluation point")
        sup = self.support()
        with np.errstate(all="ignore"):
            clipped = np.clip(arr, sup.lower, sup.upper)
            vals = self._log_pdf(clipped)
            out = np.where((arr < sup.lower) | (arr > sup.upper), -np.inf, vals)
        return _ret(out, scalar)

    # --- derived operations ---

    def pdf(self, x):
        with np.errstate(all="ignore"):
            out = np.exp(self.log_pdf(x))
        return out

    def _log_survival_extended(self, arr):
        # 0 (log 1) below the support, family form elsewhere
        sup = self.support()
        with np.errstate(all="ignore"):
            vals = self._log_survival(np.clip(arr, sup.lower, sup.upper))
        return np.where(arr <= sup.lower, 0.0, vals)

    def cdf(self, x):
        arr, scalar = _asarray(x)
        if np.any(np.isnan(arr)):
            raise DomainError("cdf: NaN evaluation point")
        with np.errstate(all="ignore"):
            out = -np.expm1(self._log_survival_extended(arr))
        return _ret(out, scalar)

    def survival(self, x):
        arr, scalar = _asarray(x)
        if np.any(np.isnan(arr)):
            raise DomainError("survival: NaN evaluation point")
        with np.errstate(all="ignore"):
            out = np.exp(self._log_survival_extended(arr))
        return _ret(out, scalar)

    def hazard(self, x):
        arr, scalar = _asarray(x)
        self._check_in_support(arr, "hazard")
        with np.errstate(all="ignore"):
            out = np.exp(self._log_pdf(arr) - self._log_survival(arr))
        return _ret(out, scalar)

    def quantile(self, p):
        arr, scalar = _asarray(p)
        if np.any(np.isnan(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
            raise DomainError(f"quantile requires p in [0, 1], got {p}")
        with np.errstate(all="ignore"):
            out = self._inv_log_survival(np.log1p(-arr))
        return _ret(out, scalar)

    def __repr__(self):
        args = ", ".join(f"{k}={v:g}" for k, v in self.params().items())
        return f"{type(self).__name__}({args})"


class Pareto(BaselineDistribution):
    """Pareto with shape k and scale theta, density k theta^k / x^(k+1) on x > theta."""

    _param_names = ("k", "theta")

    def __init__(self, k, theta):
        self.k = _positive("k", k)
        self.theta = _positive("theta", theta)

    def support(self):
        return Support(self.theta, math.inf)

    def _log_survival(self, x):
        return -self.k * np.log(x / self.theta)

    def _inv_log_survival(self, ls):
        return self.theta * np.exp(-ls / self.k)

    def _log_pdf(self, x):
        return math.log(self.k) + self.k * math.log(self.theta) - (self.k + 1.0) * np.log(x)

    def _log_pdf_dx(self, x):
        return -(self.k + 1.0) / x


class Lomax(BaselineDistribution):
    """Lomax (shifted Pareto) with shape k and scale theta on x > 0."""

    _param_names = ("k", "theta")

    def __init__(self, k, theta):
        self.k = _positive("k", k)
        self.theta = _positive("theta", theta)

    def support(self):
        return Support(0.0, math.inf)

    def _log_survival(self, x):
        return -self.k * np.log1p(x / self.theta)

    def _inv_log_survival(self, ls):
        return self.theta * np.expm1(-ls / self.k)

    def _log_pdf(self, x):
        return math.log(self.k / self.theta) - (self.k + 1.0) * np.log1p(x / self.theta)

    def _log_pdf_dx(self, x):
        return -(self.k + 1.0) / (self.theta + x)


class Cauchy(BaselineDistribution):
    """Cauchy with scale delta, centered at 0, on the whole real line."""

    _param_names = ("delta",)

    def __init__(self, delta):
        self.delta = _positive("delta", delta)

    def support(self):
        return Support(-math.inf, math.inf)

    def _log_survival(self, x):
        # survival = 1/2 - arctan(z)/pi.  Both tails go through arctan of the
        # reciprocal to keep full relative accuracy: for z > 0 the survival
        # itself is arctan(1/z)/pi; for z < 0 the cdf is -arctan(1/z)/pi and
        # the log-survival is its log1p complement.
        z = x / self.delta
        with np.errstate(all="ignore"):
            right = np.log(np.arctan(1.0 / np.where(z > 0, z, 1.0))) - _LOG_PI
            cdf_left = -np.arctan(1.0 / np.where(z < 0, z, -1.0)) / _PI
            left = np.log1p(-np.where(z < 0, cdf_left, 0.5))
        return np.where(z > 0, right, left)

    def _log_cdf(self, x):
        # symmetric about 0: F(x) = survival(-x)
        return self._log_survival(-np.asarray(x, dtype=np.float64))

    def _inv_log_survival(self, ls):
        with np.errstate(all="ignore"):
            s = np.exp(ls)
            x_right = self.delta / np.tan(_PI * s)
            f = -np.expm1(ls)
            x_left = -self.delta / np.tan(_PI * f)
        return np.where(ls <= _LOG_HALF, x_right, x_left)

    def _log_pdf(self, x):
        z = np.abs(x) / self.delta
        # log(1 + z^2), written to survive huge z
        with np.errstate(all="ignore"):
            small = np.log1p(z * z)
            big = 2.0 * np.log(np.where(z > 1, z, 1.0)) + np.log1p(
                1.0 / np.where(z > 1, z, 1.0) ** 2
            )
        return -_LOG_PI - math.log(self.delta) - np.where(z > 1, big, small)

    def _log_pdf_dx(self, x):
        return -2.0 * x / (self.delta * self.delta + x * x)


class Normal(BaselineDistribution):
    """Normal with location mu and scale sigma."""

    _param_names = ("mu", "sigma")

    def __init__(self, mu, sigma):
        self.mu = _finite("mu", mu)
        self.sigma = _positive("sigma", sigma)

    def support(self):
        return Support(-math.inf, math.inf)

    def _z(self, x):
        return (x - self.mu) / self.sigma

    def _log_survival(self, x):
        z = np.asarray(self._z(x), dtype=np.float64)
        flat = np.ascontiguousarray(z.reshape(-1))
        return specfun._norm_log_sf_vec(flat).reshape(z.shape)

    def _log_cdf(self, x):
        # symmetric about mu: F(x) = survival(2 mu - x)
        z = np.asarray(self._z(x), dtype=np.float64)
        flat = np.ascontiguousarray((-z).reshape(-1))
        return specfun._norm_log_sf_vec(flat).reshape(z.shape)

    def _inv_log_survival(self, ls):
        arr = np.asarray(ls, dtype=np.float64)
        flat = np.ascontiguousarray(arr.reshape(-1))
        z = specfun._norm_isf_log_vec(flat).reshape(arr.shape)
        return self.mu + self.sigma * z

    def _log_pdf(self, x):
        z = self._z(x)
        return -0.5 * z * z - _HALF_LOG_2PI - math.log(self.sigma)

    def _log_pdf_dx(self, x):
        return -(x - self.mu) / (self.sigma * self.sigma)


class Weibull(BaselineDistribution):
    """Weibull with shape k and scale lam on x > 0."""

    _param_names = ("k", "lam")

    def __init__(self, k, lam):
        self.k = _positive("k", k)
        self.lam = _positive("lam", lam)

    def support(self):
        return Support(0.0, math.inf)

    def _log_survival(self, x):
        return -((x / self.lam) ** self.k)

    def _inv_log_survival(self, ls):
        return self.lam * (-ls) ** (1.0 / self.k)

    def _log_pdf(self, x):
        t = x / self.lam
        with np.errstate(all="ignore"):
            return (
                math.log(self.k / self.lam)
                + (self.k - 1.0) * np.log(t)
                - t ** self.k
            )

    def _log_pdf_dx(self, x):
        t = x / self.lam
        return (self.k - 1.0) / x - (self.k / self.lam) * t ** (self.k - 1.0)


class Exponential(BaselineDistribution):
    """Exponential with rate lam; Weibull with shape 1, kept separate because
    its exact reductions make it the workhorse test baseline."""

    _param_names = ("lam",)

    def __init__(self, lam):
        self.lam = _positive("lam", lam)

    def support(self):
        return Support(0.0, math.inf)

    def _log_survival(self, x):
        return -self.lam * x

    def _inv_log_survival(self, ls):
        return -ls / self.lam

    def _log_pdf(self, x):
        return math.log(self.lam) - self.lam * x

    def _log_pdf_dx(self, x):
        return -self.lam + 0.0 * x


FAMILIES = {
    "pareto": (Pareto, ("k", "theta")),
    "lomax": (Lomax, ("k", "theta")),
    "cauchy": (Cauchy, ("delta",)),
    "normal": (Normal, ("mu", "sigma")),
    "weibull": (Weibull, ("k", "lambda")),
    "exponential": (Exponential, ("lambda",)),
}


def make_baseline(family: str, params) -> BaselineDistribution:
    """Construct a baseline by family name and positional parameter list.

    Family names and parameter orders are a CLI-level contract:
    ``pareto k theta``, ``lomax k theta``, ``cauchy delta``,
    ``normal mu sigma``, ``weibull k lambda``, ``exponential lambda``.
    """
    key = str(family).lower()
    if key not in FAMILIES:
        known = ", ".join(sorted(FAMILIES))
        raise ParameterError(f"unknown baseline family {family!r}; expected one of: {known}")
    cls, names = FAMILIES[key]
    params = list(params)
    if len(params) != len(names):
        raise ParameterError(
            f"{key} takes {len(names)} parameter(s) ({' '.join(names)}), got {len(params)}"
        )
    return cls(*params)
