"""Shared test utilities: error measures, KS statistic, grid-argmax oracle."""

import numpy as np


def rel_err(got, want, floor=1.0):
    got = np.asarray(got, dtype=float)
    want = np.asarray(want, dtype=float)
    scale = np.maximum(floor, np.maximum(np.abs(got), np.abs(want)))
    return np.max(np.abs(got - want) / scale)


def ks_statistic(sample, cdf):
    """One-sample Kolmogorov-Smirnov statistic against a vectorized cdf."""
    xs = np.sort(np.asarray(sample, dtype=float))
    n = xs.size
    u = cdf(xs)
    upper = np.max(np.abs(u - np.arange(1, n + 1) / n))
    lower = np.max(np.abs(u - np.arange(0, n) / n))
    return max(upper, lower)


def grid_argmax(dist, n_points=10_000, p_lo=1e-4, p_hi=None):
    """Density argmax over an n-point quantile-spaced grid, sharpened by a
    parabolic fit through the winning triple.  Returns None when the argmax
    sits on the grid edge (no interior maximum resolved)."""
    if p_hi is None:
        p_hi = 1.0 - p_lo
    xs = dist.quantile(np.linspace(p_lo, p_hi, n_points))
    logf = dist.log_pdf(xs)
    i = int(np.argmax(logf))
    if i == 0 or i == n_points - 1:
        return None
    x0, x1, x2 = xs[i - 1], xs[i], xs[i + 1]
    f0, f1, f2 = logf[i - 1], logf[i], logf[i + 1]
    denom = (x1 - x0) * (f1 - f2) - (x1 - x2) * (f1 - f0)
    if denom == 0:
        return float(x1)
    num = (x1 - x0) ** 2 * (f1 - f2) - (x1 - x2) ** 2 * (f1 - f0)
    return float(x1 - 0.5 * num / denom)
