"""Prototype + verify special-function kernels against mpmath before freezing."""
import math
import numpy as np
import mpmath as mp

mp.mp.dps = 50

LOG_HALF = math.log(0.5)
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
SQRT1_2 = math.sqrt(0.5)



EULER = 0.5772156649015329
_ZETA = (
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
)

def lgam1p(a):
    """log Gamma(1+a) with full relative accuracy for |a| <= 0.35."""
    if abs(a) > 0.35:
        return math.lgamma(1.0 + a)
    s = -EULER * a
    ak = a
    sign = -1.0
    for k in range(2, 42):
        ak *= a
        sign = -sign
        s += sign * _ZETA[k - 2] * ak / k
    return s

def _exp_guard(t):
    if t > 709.0:
        return math.inf
    if t < -745.0:
        return 0.0
    return math.exp(t)


def gamma_upper(a, x, itmax=100000):
    if x == 0.0:
        return _exp_guard(math.lgamma(a))
    if x >= a + 1.0:
        # continued fraction (Lentz) for Q
        tiny = 1e-300
        b = x + 1.0 - a
        c = 1.0 / tiny
        d = 1.0 / b
        h = d
        for i in range(1, itmax + 1):
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
        return _exp_guard(-x + a * math.log(x) + math.log(h))
    if a <= 0.35:
        # small-a direct: Gamma(a,x) = x^a*expm1(lgamma(a+1)-a*lnx)/a - x^a*sum_{n>=1}(-x)^n/(n! (a+n))
        L = math.log(x)
        lead = math.exp(a * L) * math.expm1(lgam1p(a) - a * L) / a
        term = 1.0
        s = 0.0
        for n in range(1, itmax + 1):
            term *= -x / n
            add = term / (a + n)
            s += add
            if abs(add) < 1e-17 * (abs(s) + 1e-300):
                break
        return lead - math.exp(a * L) * s
    # series for P, return Gamma(a)*(1-P)
    ap = a
    delt = 1.0 / a
    ssum = delt
    for n in range(1, itmax + 1):
        ap += 1.0
        delt *= x / ap
        ssum += delt
        if abs(delt) < abs(ssum) * 1e-17:
            break
    P = ssum * _exp_guard(-x + a * math.log(x) - math.lgamma(a))
    return _exp_guard(math.lgamma(a) + math.log1p(-P))


def norm_log_sf(z):
    if z <= 0.0:
        return math.log1p(-0.5 * math.erfc(-z * SQRT1_2))
    if z <= 8.0:
        return math.log(0.5 * math.erfc(z * SQRT1_2))
    # Mills-ratio continued fraction, backward evaluation
    t = z
    for k in range(64, 0, -1):
        t = z + k / t
    return -0.5 * z * z - HALF_LOG_2PI - math.log(t)


# AS241 PPND16 coefficients
_A = [3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
      1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4, 2.5090809287301226727e3]
_B = [1.0, 4.2313330701600911252e1, 6.8718700749205790830e2, 5.3941960214247511077e3,
      2.1213794301586595867e4, 3.9307895800092710610e4, 2.8729085735721942674e4,
      5.2264952788528545610e3]
_C = [1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
      3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4]
_D = [1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9]
_E = [6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7]
_F = [1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15]


def _ratpoly(c, d, r):
    num = c[7]
    for i in range(6, -1, -1):
        num = num * r + c[i]
    den = d[7]
    for i in range(6, -1, -1):
        den = den * r + d[i]
    return num / den


def norm_isf_log(ls):
    """z such that log(survival(z)) == ls, ls <= 0."""
    if ls >= 0.0:
        return -math.inf
    if ls > LOG_HALF:
        F = -math.expm1(ls)
        return -_isf_right(math.log(F))
    return _isf_right(ls)


def _isf_right(ls):
    if ls == -math.inf:
        return math.inf
    S = math.exp(ls) if ls > -700 else 0.0
    if S >= 0.075:
        q = 0.5 - S
        z = q * _ratpoly(_A, _B, 0.180625 - q * q)
    else:
        r = math.sqrt(-ls)
        if r <= 5.0:
            z = _ratpoly(_C, _D, r - 1.6)
        elif r <= 27.0:
            z = _ratpoly(_E, _F, r - 5.0)
        else:
            z = math.sqrt(-2.0 * ls)
    for _ in range(3):
        g = norm_log_sf(z) - ls
        # d/dz log sf = -hazard
        lpdf = -0.5 * z * z - HALF_LOG_2PI
        h = math.exp(lpdf - norm_log_sf(z))
        z = z + g / h
    return z


rng = np.random.default_rng(0)

# --- incomplete gamma accuracy sweep
worst = 0.0
worst_at = None
for a in [1e-3, 3e-3, 1e-2, 0.1, 0.3, 0.5, 0.77, 1.0, 2.0, 5.0, 17.0, 100.0, 350.0, 1000.0]:
    for x in [0.0, 1e-8, 1e-3, 0.1, 0.5, 0.9, 0.999, 1.0, 1.00001, 1.3, 2.0, 5.0, 50.0,
              a + 0.5, a + 0.999, a + 1.0, a * 0.9, a * 1.1, 300.0, 700.0]:
        if x < 0:
            continue
        got = gamma_upper(a, float(x))
        w = mp.gammainc(mp.mpf(a), mp.mpf(x), mp.inf)
        if w == 0 or w > mp.mpf('1e307') or w < mp.mpf('1e-300'):
            continue
        want = float(w)
        rel = abs(got - want) / abs(want)
        if rel > worst:
            worst, worst_at = rel, (a, x)
print("gamma_upper worst rel:", worst, "at", worst_at)

# --- norm_log_sf sweep
worst = 0.0
worst_at = None
for z in list(np.linspace(-40, 40, 401)) + [7.999, 8.0, 8.001, 37.0, 38.0]:
    got = norm_log_sf(float(z))
    want = float(mp.log(mp.erfc(mp.mpf(z)/mp.sqrt(2))/2)) if z > 0 else float(mp.log1p(-mp.ncdf(mp.mpf(z))))
    rel = abs(got - want) / max(1e-300, abs(want))
    if rel > worst:
        worst, worst_at = rel, z
print("norm_log_sf worst rel:", worst, "at", worst_at)

# --- isf_log roundtrip: z -> ls -> z
worst = 0.0
worst_at = None
for z in np.linspace(-37, 37, 741):
    ls = norm_log_sf(float(z))
    z2 = norm_isf_log(ls)
    err = abs(z2 - z) / max(1.0, abs(z))
    if err > worst:
        worst, worst_at = err, z
print("isf_log roundtrip worst:", worst, "at", worst_at)

# extreme ls
for ls in [-1e-12, -1e-6, -0.1, -0.5, -0.6932, -0.6930, -5.0, -50.0, -429.0, -1000.0, -5000.0]:
    z = norm_isf_log(ls)
    back = norm_log_sf(z)
    print(f"ls={ls:<10g} z={z:.12g} back={back:.12g} rel={(abs(back-ls)/abs(ls)):.2e}")
