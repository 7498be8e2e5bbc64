"""Maximum-likelihood fitting of (c, gamma) and baseline parameters.

Positive parameters are searched on the log scale (unconstrained simplex, no
boundary projection) with a multi-start derivative-free Nelder-Mead;
location parameters (normal mu) stay untransformed.  Support-endpoint
parameters (the Pareto lower bound) make the likelihood unbounded, so they
are profiled at min(data) * (1 - 1e-6) instead of searched.

gamma is redundant against a free baseline scale for every family here (the
composed law depends on ratios like k/gamma), so by default gamma is held
fixed at its initial value; free it explicitly at your own risk.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .baselines import FAMILIES, make_baseline
from .core import RandomSource, WeibullRDist
from .errors import DomainError, FitError, ParameterError

__all__ = [
    "FitSpec",
    "FitResult",
    "log_likelihood",
    "fit_mle",
    "fit_spec_from_text",
    "fit_spec_to_text",
    "default_init",
]

_LOCATION_PARAMS = {"mu"}
_PROFILE_MARGIN = 1e-6
_JITTER = 0.3
_SIMPLEX_STEP = 0.25


def param_names(family: str):
    if family not in FAMILIES:
        known = ", ".join(sorted(FAMILIES))
        raise ParameterError(f"unknown baseline family {family!r}; expected one of: {known}")
    return ("c", "gamma") + FAMILIES[family][1]


@dataclass
class FitSpec:
    """What to fit and how.

    ``free`` maps parameter names to flags (defaults: everything free except
    gamma); ``init`` overrides the data-driven initial values.
    """

    family: str
    free: dict = field(default_factory=dict)
    init: dict = field(default_factory=dict)
    max_iters: int = 2000
    tol: float = 1e-9
    starts: int = 5

    def __post_init__(self):
        self.family = str(self.family).lower()
        param_names(self.family)  # validates family
        for key in list(self.free) + list(self.init):
            if key not in param_names(self.family):
                raise ParameterError(
                    f"unknown parameter {key!r} for family {self.family!r}"
                )
        if int(self.max_iters) < 1:
            raise ParameterError(f"max_iters must be >= 1, got {self.max_iters}")
        if not float(self.tol) > 0.0:
            raise ParameterError(f"tol must be positive, got {self.tol}")
        if int(self.starts) < 1:
            raise ParameterError(f"starts must be >= 1, got {self.starts}")


@dataclass(frozen=True)
class FitResult:
    params: dict
    log_likelihood: float
    converged: bool
    iterations: int
    start_log_likelihoods: tuple = ()


def log_likelihood(d: WeibullRDist, data) -> float:
    """Sum of log densities; -inf when any point falls outside the support."""
    arr = np.asarray(data, dtype=np.float64)
    if arr.size == 0:
        raise DomainError("log_likelihood requires nonempty data")
    return float(np.sum(d.log_pdf(arr)))


def default_init(family: str, data) -> dict:
    """Median/IQR-flavored starting values; c and gamma start at 1."""
    arr = np.sort(np.asarray(data, dtype=np.float64))
    med = float(np.median(arr))
    q75, q25 = np.percentile(arr, [75.0, 25.0])
    iqr = float(q75 - q25)
    init = {"c": 1.0, "gamma": 1.0}
    if family == "lomax":
        init.update(k=1.0, theta=max(med, 1e-6))
    elif family == "pareto":
        theta = float(arr[0]) * (1.0 - _PROFILE_MARGIN)
        logs = np.log(arr / theta)
        k = 1.0 / max(float(np.mean(logs)), 1e-6)
        init.update(k=min(max(k, 0.1), 100.0), theta=theta)
    elif family == "cauchy":
        init.update(delta=max(iqr / 2.0, 1e-6))
    elif family == "normal":
        sigma = iqr / 1.349 if iqr > 0 else float(np.std(arr))
        init.update(mu=med, sigma=max(sigma, 1e-6))
    elif family == "weibull":
        init["k"] = 1.0
        init["lambda"] = max(med / math.log(2.0), 1e-6)
    elif family == "exponential":
        init["lambda"] = max(math.log(2.0) / max(med, 1e-300), 1e-6)
    return init


def _nelder_mead(fn, z0, max_iters, tol, step=_SIMPLEX_STEP):
    """Minimize fn over R^n; returns (z, fval, iterations, converged, history).

    ``history`` is the best objective value after each iteration (it is
    nonincreasing by construction of the accept rules).
    """
    ndim = len(z0)
    simplex = [np.array(z0, dtype=float)]
    for i in range(ndim):
        p = np.array(z0, dtype=float)
        p[i] += step
        simplex.append(p)
    fvals = [fn(p) for p in simplex]
    history = []
    iterations = 0
    converged = False
    for iterations in range(1, int(max_iters) + 1):
        order = np.argsort(fvals, kind="stable")
        simplex = [simplex[i] for i in order]
        fvals = [fvals[i] for i in order]
        best, worst = fvals[0], fvals[-1]
        history.append(best)
        if math.isfinite(best) and abs(worst - best) <= tol * (abs(best) + tol):
            converged = True
            break
        centroid = np.mean(simplex[:-1], axis=0)
        reflected = centroid + (centroid - simplex[-1])
        f_r = fn(reflected)
        if f_r < best:
            expanded = centroid + 2.0 * (centroid - simplex[-1])
            f_e = fn(expanded)
            if f_e < f_r:
                simplex[-1], fvals[-1] = expanded, f_e
            else:
                simplex[-1], fvals[-1] = reflected, f_r
        elif f_r < fvals[-2]:
            simplex[-1], fvals[-1] = reflected, f_r
        else:
            if f_r < worst:
                contracted = centroid + 0.5 * (reflected - centroid)
                f_c = fn(contracted)
                better_than = f_r
            else:
                contracted = centroid - 0.5 * (centroid - simplex[-1])
                f_c = fn(contracted)
                better_than = worst
            if f_c < better_than:
                simplex[-1], fvals[-1] = contracted, f_c
            else:
                for i in range(1, ndim + 1):
                    simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0])
                    fvals[i] = fn(simplex[i])
    return simplex[0], fvals[0], iterations, converged, history


def fit_mle(data, spec: FitSpec, rng: RandomSource) -> FitResult:
    """Multi-start simplex maximization of the log-likelihood.

    Starts are jittered from the initial point in transformed space; the
    winner is chosen deterministically by (objective, start index).
    """
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError("fit_mle requires a nonempty 1-d data array")
    names = param_names(spec.family)

    values = default_init(spec.family, arr)
    for key, v in spec.init.items():
        values[key] = float(v)
    for key, v in values.items():
        if key not in _LOCATION_PARAMS and not v > 0.0:
            raise ParameterError(f"initial {key} must be positive, got {v}")

    free = {name: spec.free.get(name, name != "gamma") for name in names}
    if spec.family == "pareto" and free["theta"]:
        # support endpoint: profiled, never searched
        values["theta"] = float(np.min(arr)) * (1.0 - _PROFILE_MARGIN)
        free["theta"] = False
        profiled_theta = True
    else:
        profiled_theta = False

    free_names = [name for name in names if free[name]]
    if not free_names:
        raise ParameterError("no free parameters to fit")
    if arr.size < len(free_names) + 1:
        raise DomainError(
            f"need at least {len(free_names) + 1} observations for "
            f"{len(free_names)} free parameters, got {arr.size}"
        )

    def to_z(vals):
        return np.array([
            vals[name] if name in _LOCATION_PARAMS else math.log(vals[name])
            for name in free_names
        ])

    def from_z(z):
        out = dict(values)
        for name, zi in zip(free_names, z):
            out[name] = zi if name in _LOCATION_PARAMS else math.exp(zi)
        return out

    def objective(z):
        vals = from_z(z)
        try:
            dist = WeibullRDist(
                vals["c"], vals["gamma"],
                make_baseline(spec.family, [vals[p] for p in names[2:]]),
            )
            ll = log_likelihood(dist, arr)
        except (ParameterError, DomainError, OverflowError):
            return math.inf
        return -ll if math.isfinite(ll) else math.inf

    z0 = to_z(values)
    best = None
    start_lls = []
    for s in range(int(spec.starts)):
        z_start = z0 if s == 0 else z0 + _JITTER * rng.standard_normal(len(z0))
        z, fval, iters, converged, _ = _nelder_mead(
            objective, z_start, spec.max_iters, spec.tol
        )
        start_lls.append(-fval)
        key = (fval, s)
        if math.isfinite(fval) and (best is None or key < best[0]):
            best = (key, z, iters, converged)
    if best is None:
        raise FitError("no start produced a finite log-likelihood")

    key, z, iters, converged = best
    fitted = from_z(z)
    if profiled_theta:
        fitted["theta"] = values["theta"]
    return FitResult(
        params={name: float(fitted[name]) for name in names},
        log_likelihood=float(-key[0]),
        converged=bool(converged),
        iterations=int(iters),
        start_log_likelihoods=tuple(start_lls),
    )


# --- flat key-value serialization (CLI contract) ---------------------------

def fit_spec_to_text(spec: FitSpec) -> str:
    lines = [f"family = {spec.family}"]
    for key, flag in sorted(spec.free.items()):
        lines.append(f"free.{key} = {'1' if flag else '0'}")
    for key, v in sorted(spec.init.items()):
        lines.append(f"init.{key} = {v!r}")
    lines.append(f"max_iters = {spec.max_iters}")
    lines.append(f"tol = {spec.tol!r}")
    lines.append(f"starts = {spec.starts}")
    return "\n".join(lines) + "\n"


def fit_spec_from_text(text: str) -> FitSpec:
    """Parse the flat `key = value` format; '#' starts a comment."""
    family = None
    free = {}
    init = {}
    extra = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"fit spec line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key == "family":
            family = value
        elif key.startswith("free."):
            if value.lower() not in {"0", "1", "true", "false"}:
                raise ParameterError(f"fit spec line {lineno}: bad flag {value!r}")
            free[key[5:]] = value.lower() in {"1", "true"}
        elif key.startswith("init."):
            init[key[5:]] = float(value)
        elif key in {"max_iters", "starts"}:
            extra[key] = int(value)
        elif key == "tol":
            extra[key] = float(value)
        else:
            raise ParameterError(f"fit spec line {lineno}: unknown key {key!r}")
    if family is None:
        raise ParameterError("fit spec must set 'family'")
    return FitSpec(family=family, free=free, init=init, **extra)
