"""Special functions: log-gamma, upper incomplete gamma, standard normal.

Scalar kernels are numba-compiled (see :mod:`weibull_r._accel`); the public
wrappers validate domains and raise :class:`~weibull_r.errors.DomainError`.
All accumulation is in float64, the widest native format, because the
incomplete gamma split and the normal tail both live or die by cancellation.

Algorithm notes
---------------
* ``upper_incomplete_gamma`` uses the classical split: a lower-tail series
  for ``x < a + 1`` and a modified-Lentz continued fraction for the upper
  tail.  For ``a <= 0.35`` the series route would lose relative precision
  forming ``Gamma(a) - gamma(a, x)``, so a direct expansion built on an
  accurate ``log Gamma(1 + a)`` is used instead.
* ``std_normal_log_sf`` evaluates ``log(1 - Phi(z))`` without ever forming
  ``1 - Phi``:  ``log1p(-Phi)`` on the left, ``log(0.5 erfc(z/sqrt 2))`` in
  the body, and a Mills-ratio continued fraction for ``z > 8``.
* ``std_normal_isf_log`` inverts the survival function from its logarithm
  (rational initial guess, then Newton on ``std_normal_log_sf``), so the
  deep tails never require representing the probability itself.
"""

import math

import numpy as np

from ._accel import jit
from .errors import DomainError

__all__ = [
    "EULER_MASCHERONI",
    "log_gamma",
    "upper_incomplete_gamma",
    "log_upper_incomplete_gamma",
    "std_normal_cdf",
    "std_normal_log_sf",
    "std_normal_quantile",
    "std_normal_isf_log",
]

# Euler-Mascheroni constant, 20 significant digits.
EULER_MASCHERONI = 0.57721566490153286061

_LOG_HALF = math.log(0.5)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_SQRT1_2 = math.sqrt(0.5)
_EXP_MAX = 709.0
_EXP_MIN = -745.0
_ITMAX = 100000

# zeta(2) .. zeta(41), for log Gamma(1+a) = -euler*a + sum (-1)^k zeta(k) a^k / k
_ZETA = np.array([
    1.6449340668482264, 1.2020569031595942, 1.0823232337111381, 1.03692775514337,
    1.0173430619844492, 1.008349277381923, 1.0040773561979444, 1.0020083928260821,
    1.000994575127818, 1.0004941886041194, 1.000246086553308, 1.0001227133475785,
    1.0000612481350588, 1.000030588236307, 1.0000152822594086, 1.0000076371976379,
    1.000003817293265, 1.0000019082127165, 1.0000009539620338, 1.0000004769329869,
    1.0000002384505027, 1.000000119219926, 1.000000059608189, 1.0000000298035034,
    1.0000000149015549, 1.0000000074507118, 1.000000003725334, 1.0000000018626598,
    1.0000000009313275, 1.0000000004656628, 1.000000000232831, 1.0000000001164155,
    1.0000000000582077, 1.0000000000291038, 1.000000000014552, 1.000000000007276,
    1.000000000003638, 1.000000000001819, 1.0000000000009095, 1.0000000000004547,
])

# AS 241 (PPND16) rational-approximation coefficients for the normal quantile.
_AS241_A = np.array([
    3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
    1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
    3.3430575583588128105e4, 2.5090809287301226727e3,
])
_AS241_B = np.array([
    1.0, 4.2313330701600911252e1, 6.8718700749205790830e2, 5.3941960214247511077e3,
    2.1213794301586595867e4, 3.9307895800092710610e4, 2.8729085735721942674e4,
    5.2264952788528545610e3,
])
_AS241_C = np.array([
    1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
    3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
    2.27238449892691845833e-2, 7.74545014278341407640e-4,
])
_AS241_D = np.array([
    1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
    1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
    1.05075007164441684324e-9,
])
_AS241_E = np.array([
    6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
    2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
    2.71155556874348757815e-5, 2.01033439929228813265e-7,
])
_AS241_F = np.array([
    1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
    7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
    2.04426310338993978564e-15,
])


@jit
def _exp_guard(t):
    if t > _EXP_MAX:
        return math.inf
    if t < _EXP_MIN:
        return 0.0
    return math.exp(t)


@jit
def _lgam1p(a):
    # log Gamma(1+a); the zeta series keeps full relative accuracy for
    # |a| <= 0.35 where lgamma's zero at 1 would leave only absolute accuracy
    if abs(a) > 0.35:
        return math.lgamma(1.0 + a)
    s = -EULER_MASCHERONI * a
    ak = a
    sign = -1.0
    for k in range(2, 42):
        ak *= a
        sign = -sign
        s += sign * _ZETA[k - 2] * ak / k
    return s


@jit
def _gamma_upper_cf_log(a, x):
    # modified Lentz continued fraction for Q(a, x), x >= a + 1
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _ITMAX + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return -x + a * math.log(x) + math.log(h)


@jit
def _gamma_lower_reg_series(a, x):
    # series for P(a, x), x < a + 1
    ap = a
    term = 1.0 / a
    total = term
    for _ in range(_ITMAX):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * 1e-17:
            break
    return total * _exp_guard(-x + a * math.log(x) - math.lgamma(a))


@jit
def _gamma_upper_small_a(a, x):
    # direct evaluation for a <= 0.35, x < a + 1: no Gamma(a) - gamma(a, x)
    # subtraction, so relative accuracy survives a -> 0
    L = math.log(x)
    xa = math.exp(a * L)
    lead = xa * math.expm1(_lgam1p(a) - a * L) / a
    term = 1.0
    s = 0.0
    for n in range(1, _ITMAX + 1):
        term *= -x / n
        add = term / (a + n)
        s += add
        if abs(add) < 1e-17 * (abs(s) + 1e-300):
            break
    return lead - xa * s


@jit
def _gamma_upper_log_kern(a, x):
    if x == 0.0:
        return math.lgamma(a)
    if x >= a + 1.0:
        return _gamma_upper_cf_log(a, x)
    if a <= 0.35:
        return math.log(_gamma_upper_small_a(a, x))
    p = _gamma_lower_reg_series(a, x)
    return math.lgamma(a) + math.log1p(-p)


@jit
def _gamma_upper_kern(a, x):
    if x == 0.0:
        return _exp_guard(math.lgamma(a))
    if x < a + 1.0 and a <= 0.35:
        return _gamma_upper_small_a(a, x)
    return _exp_guard(_gamma_upper_log_kern(a, x))


@jit
def _norm_cdf_kern(z):
    return 0.5 * math.erfc(-z * _SQRT1_2)


@jit
def _norm_log_sf_kern(z):
    if z == math.inf:
        return -math.inf
    if z <= 0.0:
        # survival near 1: go through the tiny cdf
        return math.log1p(-0.5 * math.erfc(-z * _SQRT1_2))
    if z <= 8.0:
        return math.log(0.5 * math.erfc(z * _SQRT1_2))
    # Mills-ratio continued fraction, evaluated backward
    t = z
    for k in range(64, 0, -1):
        t = z + k / t
    return -0.5 * z * z - _HALF_LOG_2PI - math.log(t)


@jit
def _ratpoly(num, den, r):
    p = num[7]
    for i in range(6, -1, -1):
        p = p * r + num[i]
    q = den[7]
    for i in range(6, -1, -1):
        q = q * r + den[i]
    return p / q


@jit
def _norm_isf_right(ls):
    # survival <= 1/2 (z >= 0 up to rounding at the seam)
    if ls == -math.inf:
        return math.inf
    s = math.exp(ls) if ls > -700.0 else 0.0
    if s >= 0.075:
        q = 0.5 - s
        z = q * _ratpoly(_AS241_A, _AS241_B, 0.180625 - q * q)
    else:
        r = math.sqrt(-ls)
        if r <= 5.0:
            z = _ratpoly(_AS241_C, _AS241_D, r - 1.6)
        elif r <= 27.0:
            z = _ratpoly(_AS241_E, _AS241_F, r - 5.0)
        else:
            z = math.sqrt(-2.0 * ls)
    # Newton on log-survival pins the inverse to _norm_log_sf_kern itself
    for _ in range(3):
        g = _norm_log_sf_kern(z) - ls
        hazard = math.exp(-0.5 * z * z - _HALF_LOG_2PI - _norm_log_sf_kern(z))
        z = z + g / hazard
    return z


@jit
def _norm_isf_log_kern(ls):
    if ls >= 0.0:
        return -math.inf
    if ls > _LOG_HALF:
        f = -math.expm1(ls)
        if f == 0.0:
            return -math.inf
        return -_norm_isf_right(math.log(f))
    return _norm_isf_right(ls)


# --- array kernels (hot paths: Monte Carlo, grids, record series) ---------

@jit
def _gamma_upper_vec(a, xs):
    out = np.empty_like(xs)
    for i in range(xs.size):
        out[i] = _gamma_upper_kern(a, xs[i])
    return out


@jit
def _norm_cdf_vec(zs):
    out = np.empty_like(zs)
    for i in range(zs.size):
        out[i] = _norm_cdf_kern(zs[i])
    return out


@jit
def _norm_log_sf_vec(zs):
    out = np.empty_like(zs)
    for i in range(zs.size):
        out[i] = _norm_log_sf_kern(zs[i])
    return out


@jit
def _norm_isf_log_vec(lss):
    out = np.empty_like(lss)
    for i in range(lss.size):
        out[i] = _norm_isf_log_kern(lss[i])
    return out


# --- public scalar API -----------------------------------------------------

def _require_finite(name, v):
    if not math.isfinite(v):
        raise DomainError(f"{name} must be finite, got {v!r}")


def log_gamma(a: float) -> float:
    """Natural log of the gamma function for a > 0."""
    a = float(a)
    _require_finite("a", a)
    if a <= 0.0:
        raise DomainError(f"log_gamma requires a > 0, got {a}")
    # keep relative accuracy near the zeros at a = 1 and a = 2
    if abs(a - 1.0) <= 0.35:
        return _lgam1p(a - 1.0)
    if abs(a - 2.0) <= 0.35:
        return _lgam1p(a - 2.0) + math.log1p(a - 2.0)
    return math.lgamma(a)


def upper_incomplete_gamma(a: float, x: float) -> float:
    """Upper incomplete gamma integral over [x, inf) of t^(a-1) e^(-t).

    Returns 0.0 when the result underflows float64 and ``inf`` when it
    overflows (possible only through Gamma(a) for large ``a``).
    """
    a, x = float(a), float(x)
    _require_finite("a", a)
    _require_finite("x", x)
    if a <= 0.0:
        raise DomainError(f"upper_incomplete_gamma requires a > 0, got a={a}")
    if x < 0.0:
        raise DomainError(f"upper_incomplete_gamma requires x >= 0, got x={x}")
    return _gamma_upper_kern(a, x)


def log_upper_incomplete_gamma(a: float, x: float) -> float:
    """Log of :func:`upper_incomplete_gamma`; finite far past where the
    linear value underflows (needed by record computations)."""
    a, x = float(a), float(x)
    _require_finite("a", a)
    _require_finite("x", x)
    if a <= 0.0:
        raise DomainError(f"log_upper_incomplete_gamma requires a > 0, got a={a}")
    if x < 0.0:
        raise DomainError(f"log_upper_incomplete_gamma requires x >= 0, got x={x}")
    return _gamma_upper_log_kern(a, x)


def std_normal_cdf(z: float) -> float:
    """Standard normal CDF via erfc; absolute error at the 1e-16 level."""
    z = float(z)
    _require_finite("z", z)
    return _norm_cdf_kern(z)


def std_normal_log_sf(z: float) -> float:
    """log(1 - Phi(z)), computed on a log-complement path for every z."""
    z = float(z)
    if math.isnan(z):
        raise DomainError("z must not be NaN")
    if z == -math.inf:
        return 0.0
    return _norm_log_sf_kern(z)


def std_normal_quantile(p: float) -> float:
    """Inverse standard normal CDF; p in [0, 1], endpoints map to +-inf."""
    p = float(p)
    if math.isnan(p) or p < 0.0 or p > 1.0:
        raise DomainError(f"quantile requires p in [0, 1], got {p}")
    if p == 0.0:
        return -math.inf
    if p == 1.0:
        return math.inf
    return _norm_isf_log_kern(math.log1p(-p))


def std_normal_isf_log(ls: float) -> float:
    """z such that log(1 - Phi(z)) == ls, for ls <= 0."""
    ls = float(ls)
    if math.isnan(ls) or ls > 0.0:
        raise DomainError(f"isf_log requires log-survival <= 0, got {ls}")
    return _norm_isf_log_kern(ls)
