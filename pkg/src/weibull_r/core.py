"""The composed Weibull-R distribution.

For a baseline R with cumulative hazard ``H(x) = -log(1 - F_R(x))`` and outer
shape/scale ``c, gamma``, the composed law has

    survival(x) = exp(-[H(x)/gamma]^c)

and everything here (density, hazard, quantile, sampling, mode, tail
asymptotics) is evaluated through the baseline's closed-form log-survival;
``1 - F_R`` is never formed.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .baselines import BaselineDistribution, Support
from .errors import DomainError, ParameterError

__all__ = ["WeibullRParams", "WeibullRDist", "RandomSource", "TailAsymptote"]

_BIT_GENERATORS = {
    "pcg64": np.random.PCG64,
    "philox": np.random.Philox,
}


class RandomSource:
    """Seeded random stream; identical (seed, algorithm) gives identical output.

    A source is single-owner mutable state: concurrent samplers must each
    hold their own instance.  Standard-exponential variates are produced as
    ``-log(1 - U)`` with U uniform on [0, 1), which pins the inverse-transform
    sampling contract down to the bit level.
    """

    def __init__(self, seed: int, algorithm: str = "pcg64"):
        if not isinstance(seed, (int, np.integer)):
            raise ParameterError(f"seed must be an integer, got {seed!r}")
        algorithm = str(algorithm).lower()
        if algorithm not in _BIT_GENERATORS:
            known = ", ".join(sorted(_BIT_GENERATORS))
            raise ParameterError(f"unknown rng algorithm {algorithm!r}; expected one of: {known}")
        self.seed = int(seed)
        self.algorithm = algorithm
        self._gen = np.random.Generator(_BIT_GENERATORS[algorithm](self.seed))

    def uniform(self, n: int) -> np.ndarray:
        return self._gen.random(int(n))

    def standard_exponential(self, n: int) -> np.ndarray:
        return -np.log1p(-self.uniform(n))

    def standard_normal(self, n: int) -> np.ndarray:
        return self._gen.standard_normal(int(n))

    def __repr__(self):
        return f"RandomSource(seed={self.seed}, algorithm={self.algorithm!r})"


@dataclass(frozen=True)
class WeibullRParams:
    """Outer Weibull parameters: shape c > 0, scale gamma > 0."""

    c: float
    gamma: float

    def __post_init__(self):
        for name in ("c", "gamma"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v > 0.0):
                raise ParameterError(f"{name} must be positive and finite, got {v}")
            object.__setattr__(self, name, v)


class TailAsymptote(NamedTuple):
    pdf_asymptote: float
    hazard_asymptote: float


def _asarray(x):
    arr = np.asarray(x, dtype=np.float64)
    return arr, arr.ndim == 0


def _ret(arr, scalar):
    return float(arr) if scalar else arr


class WeibullRDist:
    """Weibull(c, gamma) composed with a baseline through its cumulative hazard.

    Immutable and shareable across threads; all randomness comes in through
    an explicit :class:`RandomSource`.
    """

    def __init__(self, c, gamma, baseline: BaselineDistribution):
        self.params = WeibullRParams(float(c), float(gamma))
        if not isinstance(baseline, BaselineDistribution):
            raise ParameterError(f"baseline must be a BaselineDistribution, got {baseline!r}")
        self.baseline = baseline

    @property
    def c(self) -> float:
        return self.params.c

    @property
    def gamma(self) -> float:
        return self.params.gamma

    def support(self) -> Support:
        return self.baseline.support()

    def __repr__(self):
        return f"WeibullRDist(c={self.c:g}, gamma={self.gamma:g}, baseline={self.baseline!r})"

    # --- internal pieces -------------------------------------------------

    def _cum_hazard_extended(self, arr):
        # [H(x)/gamma]^c with 0 below the support; valid for any finite x
        with np.errstate(all="ignore"):
            h_r = -self.baseline._log_survival_extended(arr)
            lt = np.log(h_r) - math.log(self.gamma)
            return np.exp(self.c * lt)

    def _log_pdf_arr(self, arr):
        c, gamma = self.c, self.gamma
        sup = self.baseline.support()
        with np.errstate(all="ignore"):
            clipped = np.clip(arr, sup.lower, sup.upper)
            ls = self.baseline._log_survival(clipped)
            log_haz_r = self.baseline._log_pdf(clipped) - ls
            h_r = -ls
            lt = np.log(h_r) - math.log(gamma)  # log(H/gamma); -inf at the endpoint
            if not math.isfinite(sup.lower) and np.any(h_r == 0.0):
                # deep left tail: H = -log(1-F) underflows but log F does not,
                # and H ~ F there, so log H is recoverable
                lt = np.where(h_r == 0.0,
                              self.baseline._log_cdf(clipped) - math.log(gamma), lt)
            w = np.exp(c * lt)
            if c == 1.0:
                shape_term = np.zeros_like(lt)
            else:
                shape_term = (c - 1.0) * lt
            out = math.log(c) - math.log(gamma) + log_haz_r + shape_term - w
            # indeterminate -inf + inf combinations:
            bad = np.isnan(out)
            if np.any(bad):
                # far into an unbounded lower tail both h_R and H underflow;
                # the hazard factor dominates and the density vanishes
                if not math.isfinite(sup.lower):
                    out = np.where(bad, -np.inf, out)
                else:
                    # exact finite endpoint where h_R and H^(c-1) pull in
                    # opposite directions: take the one-sided limit
                    out = np.where(bad & (arr == sup.lower),
                                   self._endpoint_logpdf_limit(), out)
            return np.where((arr < sup.lower) | (arr > sup.upper), -np.inf, out)

    def _endpoint_logpdf_limit(self):
        # one-sided limit of log pdf at a finite lower endpoint, via the
        # local power behaviour (h_R and H are regularly varying there)
        lo = self.baseline.support().lower
        scale = self.quantile(0.5) - lo
        eps = 1e-7 * max(float(scale), 1e-300)
        s1 = float(self._log_pdf_arr(np.asarray(lo + eps)))
        s2 = float(self._log_pdf_arr(np.asarray(lo + 2.0 * eps)))
        if not (math.isfinite(s1) and math.isfinite(s2)) or abs(s2 - s1) < 1e-6:
            return s1
        return -math.inf if s2 > s1 else math.inf

    # --- evaluation -------------------------------------------------------

    def log_pdf(self, x):
        """Log-density; -inf outside the support (sentinel, not an error)."""
        arr, scalar = _asarray(x)
        if np.any(np.isnan(arr)):
            raise DomainError("log_pdf: NaN evaluation point")
        return _ret(self._log_pdf_arr(arr), scalar)

    def pdf(self, x):
        """Density, computed as exp(log_pdf); 0 outside the support."""
        arr, scalar = _asarray(x)
        if np.any(np.isnan(arr)):
            raise DomainError("pdf: NaN evaluation point")
        with np.errstate(all="ignore"):
            return _ret(np.exp(self._log_pdf_arr(arr)), scalar)

    def cdf(self, x):
        arr, scalar = _asarray(x)
        if np.any(np.isnan(arr)):
            raise DomainError("cdf: NaN evaluation point")
        with np.errstate(all="ignore"):
            out = -np.expm1(-self._cum_hazard_extended(arr))
        return _ret(out, scalar)

    def survival(self, x):
        arr, scalar = _asarray(x)
        if np.any(np.isnan(arr)):
            raise DomainError("survival: NaN evaluation point")
        with np.errstate(all="ignore"):
            out = np.exp(-self._cum_hazard_extended(arr))
        return _ret(out, scalar)

    def cumulative_hazard(self, x):
        """[H_R(x)/gamma]^c; equals -log(survival)."""
        arr, scalar = _asarray(x)
        self.baseline._check_in_support(arr, "cumulative_hazard")
        return _ret(self._cum_hazard_extended(arr), scalar)

    def hazard(self, x):
        """Hazard rate (c/gamma) h_R(x) [H_R(x)/gamma]^(c-1)."""
        arr, scalar = _asarray(x)
        self.baseline._check_in_support(arr, "hazard")
        with np.errstate(all="ignore"):
            out = np.exp(self._log_pdf_arr(arr) + self._cum_hazard_extended(arr))
        return _ret(out, scalar)

    def quantile(self, p):
        """Inverse cdf: Q(p) = Q_R(1 - exp(-gamma [-log(1-p)]^(1/c))), taken
        through the baseline's log-survival inverse."""
        arr, scalar = _asarray(p)
        if np.any(np.isnan(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
            raise DomainError(f"quantile requires p in [0, 1], got {p}")
        with np.errstate(all="ignore"):
            t = -np.log1p(-arr)
            target = self.gamma * t ** (1.0 / self.c)
            out = self.baseline._inv_log_survival(-target)
        return _ret(out, scalar)

    # --- sampling ----------------------------------------------------------

    def sample(self, n: int, rng: RandomSource) -> np.ndarray:
        """n i.i.d. draws by inverse transform of standard exponentials."""
        n = int(n)
        if n < 0:
            raise DomainError(f"sample size must be >= 0, got {n}")
        if n == 0:
            return np.empty(0)
        e = rng.standard_exponential(n)
        with np.errstate(all="ignore"):
            return self.baseline._inv_log_survival(-self.gamma * e ** (1.0 / self.c))

    # --- shape -------------------------------------------------------------

    def _log_pdf_deriv(self, arr):
        # d/dx log pdf: psi_R + h_R (1 + (c-1)/H - (c/gamma)(H/gamma)^(c-1))
        c, gamma = self.c, self.gamma
        with np.errstate(all="ignore"):
            ls = self.baseline._log_survival(arr)
            h_r = np.exp(self.baseline._log_pdf(arr) - ls)
            big_h = -ls
            bracket = 1.0 - (c / gamma) * (big_h / gamma) ** (c - 1.0)
            if c != 1.0:
                bracket = bracket + (c - 1.0) / big_h
            return self.baseline._log_pdf_dx(arr) + h_r * bracket

    def _mode_scan_grid(self, tail_exponent):
        ps = np.concatenate([
            np.logspace(-tail_exponent, math.log10(0.5), 500),
            1.0 - np.logspace(math.log10(0.5), -tail_exponent, 500),
        ])
        xs = self.quantile(ps)
        xs = np.unique(xs[np.isfinite(xs)])
        return xs

    def mode(self) -> Optional[float]:
        """Interior maximum of the density, or None when the density is
        monotone over the support.

        The stationarity equation has no closed solution, so the sign of
        d log pdf / dx is scanned on a quantile-spaced grid and each
        down-crossing is refined by bisection to |dx| <= 1e-10 * scale.
        """
        roots = []
        for tail_exponent in (7, 12):
            xs = self._mode_scan_grid(tail_exponent)
            with np.errstate(all="ignore"):
                s = self._log_pdf_deriv(xs)
            ok = np.isfinite(s)
            xs, s = xs[ok], s[ok]
            if xs.size < 2:
                continue
            down = np.nonzero((s[:-1] > 0.0) & (s[1:] <= 0.0))[0]
            for i in down:
                roots.append(self._refine_mode(xs[i], xs[i + 1]))
            if roots:
                break
        if not roots:
            return None
        dens = [float(self._log_pdf_arr(np.asarray(r))) for r in roots]
        return float(roots[int(np.argmax(dens))])

    def _refine_mode(self, lo, hi):
        f_lo = float(self._log_pdf_deriv(np.asarray(lo)))
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if hi - lo <= 1e-10 * max(1.0, abs(mid)):
                break
            f_mid = float(self._log_pdf_deriv(np.asarray(mid)))
            if np.isnan(f_mid):
                break
            if (f_mid > 0.0) == (f_lo > 0.0):
                lo = mid
                f_lo = f_mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def tail_asymptote(self, x) -> TailAsymptote:
        """Limiting density and hazard forms as x -> -inf:
        (c/gamma^c) f_R(x) F_R(x)^(c-1), with the extra exp(-gamma^-c F_R^c)
        factor on the density side.  Requires a support unbounded below."""
        if math.isfinite(self.baseline.support().lower):
            raise DomainError(
                "tail_asymptote requires a baseline support unbounded below"
            )
        arr, scalar = _asarray(x)
        c, gamma = self.c, self.gamma
        with np.errstate(all="ignore"):
            f = self.baseline.pdf(arr)
            big_f = self.baseline.cdf(arr)
            base = (c / gamma ** c) * f * big_f ** (c - 1.0)
            pdf_asym = base * np.exp(-(gamma ** -c) * big_f ** c)
        if scalar:
            return TailAsymptote(float(pdf_asym), float(base))
        return TailAsymptote(pdf_asym, base)
