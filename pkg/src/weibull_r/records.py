"""Upper-record-value densities and record sampling for the composed law.

With W(x) = [H_R(x)/gamma]^c the composed cumulative hazard, records of an
i.i.d. stream are the images of unit-rate Poisson arrival times under
W^{-1}: the m-th record value has density f(x) W(x)^(m-1) / Gamma(m), and
the joint density of the m-th and n-th records is the classical product
form in W increments.

The series form of the marginal keeps the intermediate binomial expansion
(powers of W times upper incomplete gamma terms).  It telescopes to the
closed form for every valid (m, n) — the equivalence is the module's
central correctness check — but alternates in sign, so a term/result
magnitude guard raises :class:`CancellationError` instead of returning a
silently hollow sum.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._accel import jit
from .core import RandomSource, WeibullRDist
from .errors import CancellationError, DomainError, ParameterError
from .specfun import _gamma_upper_log_kern

__all__ = [
    "RecordQuery",
    "joint_record_pdf",
    "record_marginal_pdf_closed",
    "record_marginal_pdf_series",
    "sample_records",
]


@dataclass(frozen=True)
class RecordQuery:
    """Pair of record indices 1 <= m < n."""

    m: int
    n: int

    def __post_init__(self):
        if int(self.m) != self.m or int(self.n) != self.n:
            raise ParameterError(f"record indices must be integers, got m={self.m}, n={self.n}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "n", int(self.n))
        if not (1 <= self.m < self.n):
            raise ParameterError(f"record indices require 1 <= m < n, got m={self.m}, n={self.n}")


def _check_index(m):
    if int(m) != m or int(m) < 1:
        raise ParameterError(f"record index must be an integer >= 1, got {m}")
    return int(m)


def joint_record_pdf(d: WeibullRDist, q: RecordQuery, x, y):
    """Joint density of the m-th and n-th record values at (x, y); zero for
    x >= y, evaluated in log space through the composed cumulative hazard."""
    xa, xs = np.asarray(x, dtype=np.float64), np.ndim(x) == 0
    ya, ys = np.asarray(y, dtype=np.float64), np.ndim(y) == 0
    d.baseline._check_in_support(xa, "joint_record_pdf")
    d.baseline._check_in_support(ya, "joint_record_pdf")
    m, n = q.m, q.n
    with np.errstate(all="ignore"):
        wx = d._cum_hazard_extended(xa)
        wy = d._cum_hazard_extended(ya)
        log_j = (
            d._log_pdf_arr(xa)
            + d._log_pdf_arr(ya)
            + wx
            - math.lgamma(m)
            - math.lgamma(n - m)
        )
        if n - m - 1 > 0:
            log_j = log_j + (n - m - 1) * np.log(wy - wx)
        if m > 1:
            log_j = log_j + (m - 1) * np.log(wx)
        out = np.where(xa >= ya, 0.0, np.exp(log_j))
    if xs and ys:
        return float(out)
    return out


def record_marginal_pdf_closed(d: WeibullRDist, m: int, x):
    """Density of the m-th record value: pdf(x) W(x)^(m-1) / Gamma(m)."""
    m = _check_index(m)
    arr, scalar = np.asarray(x, dtype=np.float64), np.ndim(x) == 0
    d.baseline._check_in_support(arr, "record_marginal_pdf_closed")
    with np.errstate(all="ignore"):
        log_f = d._log_pdf_arr(arr) - math.lgamma(m)
        if m > 1:
            log_f = log_f + (m - 1) * np.log(d._cum_hazard_extended(arr))
        out = np.exp(log_f)
    return float(out) if scalar else out


@jit
def _record_series_kern(w_arr, big_n):
    # sum_{j=0..N} (-1)^(N-j) C(N,j) w^(N-j) Gamma(j+1, w), with the
    # worst-term/result ratio reported for the cancellation guard
    sums = np.empty_like(w_arr)
    ratios = np.empty_like(w_arr)
    lg_n1 = math.lgamma(big_n + 1.0)
    for i in range(w_arr.size):
        w = w_arr[i]
        if w == 0.0:
            # only the j = N term survives: Gamma(N+1, 0) = N!
            sums[i] = math.exp(lg_n1)
            ratios[i] = 1.0
            continue
        logw = math.log(w)
        s = 0.0
        max_t = 0.0
        for j in range(big_n + 1):
            lb = lg_n1 - math.lgamma(j + 1.0) - math.lgamma(big_n - j + 1.0)
            lt = lb + (big_n - j) * logw + _gamma_upper_log_kern(j + 1.0, w)
            t = math.exp(lt)
            if (big_n - j) % 2 == 1:
                t = -t
            s += t
            if abs(t) > max_t:
                max_t = abs(t)
        sums[i] = s
        ratios[i] = max_t / abs(s) if s != 0.0 else (math.inf if max_t > 0.0 else 1.0)
    return sums, ratios


_CANCEL_RATIO = 1e12


def record_marginal_pdf_series(d: WeibullRDist, q: RecordQuery, x):
    """Marginal record density by the intermediate binomial/incomplete-gamma
    expansion; agrees with :func:`record_marginal_pdf_closed` for all valid
    (m, n) up to roundoff.  Raises :class:`CancellationError` when the
    alternating terms exceed 1e12 times the result."""
    m, n = q.m, q.n
    arr, scalar = np.asarray(x, dtype=np.float64), np.ndim(x) == 0
    d.baseline._check_in_support(arr, "record_marginal_pdf_series")
    flat = np.ascontiguousarray(np.atleast_1d(arr), dtype=np.float64).ravel()
    with np.errstate(all="ignore"):
        w = d._cum_hazard_extended(flat)
        sums, ratios = _record_series_kern(w, n - m - 1)
        worst = float(np.max(ratios))
        if worst > _CANCEL_RATIO:
            raise CancellationError(
                f"record series lost precision (term/result ratio {worst:.3g} > "
                f"{_CANCEL_RATIO:.0e}); use record_marginal_pdf_closed"
            )
        log_pref = (
            d._log_pdf_arr(flat)
            + w
            - math.lgamma(m)
            - math.lgamma(n - m)
        )
        if m > 1:
            log_pref = log_pref + (m - 1) * np.log(w)
        out = (np.exp(log_pref) * sums).reshape(np.atleast_1d(arr).shape)
    return float(out[0]) if scalar else out


def sample_records(d: WeibullRDist, m: int, n_paths: int, rng: RandomSource) -> np.ndarray:
    """Draw n_paths independent copies of the m-th record value.

    Uses the arrival-time representation: G ~ Gamma(m, 1) as a sum of m
    standard exponentials, then x solves W(x) = G, i.e.
    x = Q_R(1 - exp(-gamma G^(1/c))).  O(m) per draw, unlike simulating the
    record stream itself.
    """
    m = _check_index(m)
    n_paths = int(n_paths)
    if n_paths < 0:
        raise DomainError(f"n_paths must be >= 0, got {n_paths}")
    if n_paths == 0:
        return np.empty(0)
    e = rng.standard_exponential(n_paths * m).reshape(n_paths, m)
    g = e.sum(axis=1)
    with np.errstate(all="ignore"):
        return d.baseline._inv_log_survival(-d.gamma * g ** (1.0 / d.c))
