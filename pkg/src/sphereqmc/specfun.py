"""Self-contained special functions.

Everything the rest of the package needs from classical analysis lives here:
log-gamma (Lanczos), gamma ratios, Pochhammer symbols, Jacobi and Gegenbauer
polynomial evaluation by three-term recurrence, Bessel J, the Riemann zeta
function for real argument > 1, and spherical-harmonic dimension counts.

No external math library is used; numpy provides array arithmetic only.
Degrees in the polynomial recurrences are capped at 4096, which is far above
anything the samplers or scans request.
"""

import math
from dataclasses import dataclass

import numpy as np

MAX_DEGREE = 4096

# Lanczos approximation, g = 607/128, 15 coefficients (Godfrey's set).
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = np.array([
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
])
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)


def log_gamma(x):
    """Natural logarithm of Gamma(x) for real x > 0.

    Accepts scalars or arrays. Relative accuracy of exp(log_gamma(x))
    against Gamma(x) is at the 1e-13 level for moderate x; for large x the
    log itself is accurate to a few ulps.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0) or np.any(~np.isfinite(arr)):
        raise ValueError("log_gamma requires x > 0")
    a = arr[..., None] - 1.0 + np.arange(1.0, 15.0)
    series = _LANCZOS_C[0] + np.sum(_LANCZOS_C[1:] / a, axis=-1)
    t = arr + (_LANCZOS_G - 0.5)
    out = _HALF_LOG_TWO_PI + (arr - 0.5) * np.log(t) - t + np.log(series)
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(out)
    return out


def gamma_real(x):
    """Gamma(x) for real non-pole x, including negative non-integer arguments.

    Negative arguments are lifted to the positive axis with the recurrence
    Gamma(x) = Gamma(x+n) / (x (x+1) ... (x+n-1)), which keeps the sign exact.
    """
    xf = float(x)
    if xf > 0.0:
        return math.exp(log_gamma(xf))
    if xf == math.floor(xf):
        raise ValueError(f"gamma_real: pole at non-positive integer {x}")
    prod = 1.0
    while xf < 0.5:
        prod *= xf
        xf += 1.0
    return math.exp(log_gamma(xf)) / prod


def gamma_ratio(x, a):
    """Gamma(x) / Gamma(x + a), computed in log space to avoid overflow.

    Both x and x + a must be positive.
    """
    if x <= 0.0 or x + a <= 0.0:
        raise ValueError("gamma_ratio requires x > 0 and x + a > 0")
    return math.exp(log_gamma(x) - log_gamma(x + a))


def pochhammer(x, n):
    """Rising factorial (x)_n = x (x+1) ... (x+n-1) as a literal product.

    The product form keeps the sign structure exact: when x is a non-positive
    integer with |x| < n the result is exactly zero, and negative x give the
    correct alternating signs. (x)_0 = 1.
    """
    if n < 0 or n != int(n):
        raise ValueError("pochhammer requires a nonnegative integer n")
    acc = 1.0
    xf = float(x)
    for k in range(int(n)):
        acc *= xf + k
    return acc


@dataclass(frozen=True)
class JacobiParams:
    """Exponent pair (alpha, beta) of a Jacobi weight (1-t)^alpha (1+t)^beta."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1.0 and self.beta > -1.0):
            raise ValueError("Jacobi parameters must satisfy alpha > -1, beta > -1")


def kernel_jacobi_params(d):
    """Jacobi parameters (1 + lambda, lambda) with lambda = (d-2)/2 used by the
    degree-L reproducing kernel on the d-sphere."""
    lam = (d - 2) / 2.0
    return JacobiParams(1.0 + lam, lam)


def _check_t(t):
    arr = np.asarray(t, dtype=float)
    if np.any(np.abs(arr) > 1.0 + 1e-12):
        raise ValueError("polynomial argument t must lie in [-1, 1]")
    return np.clip(arr, -1.0, 1.0)


def jacobi_eval(params, L, t):
    """Jacobi polynomial P_L^(alpha,beta)(t) in the standard normalization.

    Three-term recurrence; P_L(1) = binom(L + alpha, L). Accepts scalar or
    array t in [-1, 1].
    """
    if L < 0 or L != int(L):
        raise ValueError("degree L must be a nonnegative integer")
    if L > MAX_DEGREE:
        raise ValueError(f"degree L = {L} exceeds the supported cap {MAX_DEGREE}")
    a, b = params.alpha, params.beta
    tt = _check_t(t)
    scalar = np.isscalar(t) or np.asarray(t).ndim == 0
    tt = np.atleast_1d(tt)

    p_prev = np.ones_like(tt)
    if L == 0:
        return float(p_prev[0]) if scalar else p_prev
    p_cur = (a + 1.0) + (a + b + 2.0) * (tt - 1.0) / 2.0
    for n in range(2, int(L) + 1):
        c1 = 2.0 * n * (n + a + b) * (2.0 * n + a + b - 2.0)
        c2a = (2.0 * n + a + b - 1.0) * (a * a - b * b)
        c2b = (2.0 * n + a + b - 1.0) * (2.0 * n + a + b) * (2.0 * n + a + b - 2.0)
        c3 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * (2.0 * n + a + b)
        p_next = ((c2b * tt + c2a) * p_cur - c3 * p_prev) / c1
        p_prev, p_cur = p_cur, p_next
    return float(p_cur[0]) if scalar else p_cur


def jacobi_value_at_one(params, L):
    """P_L^(alpha,beta)(1) = binom(L + alpha, L), via log-gamma."""
    a = params.alpha
    return math.exp(log_gamma(L + a + 1.0) - log_gamma(a + 1.0) - log_gamma(L + 1.0))


def gegenbauer_eval(d, ell, t):
    """Gegenbauer polynomial for the d-sphere, normalized to 1 at t = 1.

    For d = 2 these are the Legendre polynomials. Uses the normalized
    recurrence (ell + d - 1) P_{ell+1} = (2 ell + d - 1) t P_ell - ell P_{ell-1}.
    """
    if d < 1 or d != int(d):
        raise ValueError("sphere dimension d must be a positive integer")
    if ell < 0 or ell != int(ell):
        raise ValueError("degree ell must be a nonnegative integer")
    if ell > MAX_DEGREE:
        raise ValueError(f"degree ell = {ell} exceeds the supported cap {MAX_DEGREE}")
    tt = _check_t(t)
    scalar = np.isscalar(t) or np.asarray(t).ndim == 0
    tt = np.atleast_1d(tt)

    p_prev = np.ones_like(tt)
    if ell == 0:
        return float(p_prev[0]) if scalar else p_prev
    p_cur = tt.copy()
    for n in range(1, int(ell)):
        p_next = ((2.0 * n + d - 1.0) * tt * p_cur - n * p_prev) / (n + d - 1.0)
        p_prev, p_cur = p_cur, p_next
    return float(p_cur[0]) if scalar else p_cur


# Bessel J: power series below the switchover, Hankel asymptotics above.
_BESSEL_SWITCH = 12.0


def _bessel_series(nu, t):
    # t <= switchover; terms alternate, ratio -(t^2/4)/((k+1)(nu+k+1))
    out = np.zeros_like(t)
    pos = t > 0.0
    if np.any(~pos):
        out[~pos] = 1.0 if nu == 0.0 else 0.0
    tp = t[pos]
    if tp.size:
        term = np.exp(nu * np.log(tp / 2.0) - log_gamma(nu + 1.0))
        total = term.copy()
        q = tp * tp / 4.0
        for k in range(80):
            term = -term * q / ((k + 1.0) * (nu + k + 1.0))
            total += term
            if np.max(np.abs(term)) < 1e-17 * (np.max(np.abs(total)) + 1.0):
                break
        out[pos] = total
    return out


def _bessel_asymptotic(nu, t):
    # Hankel expansion, truncated at the smallest term per element.
    mu = 4.0 * nu * nu
    omega = t - nu * math.pi / 2.0 - math.pi / 4.0
    p_sum = np.ones_like(t)
    q_sum = np.zeros_like(t)
    a_j = 1.0
    term_prev = np.full_like(t, np.inf)
    active = np.ones(t.shape, dtype=bool)
    tpow = np.ones_like(t)
    for j in range(1, 40):
        a_j = a_j * (mu - (2.0 * j - 1.0) ** 2) / (8.0 * j)
        tpow = tpow / t
        term = a_j * tpow
        mag = np.abs(term)
        active &= mag < term_prev
        if not np.any(active):
            break
        sign = -1.0 if (j // 2) % 2 == 1 else 1.0
        contrib = np.where(active, sign * term, 0.0)
        if j % 2 == 1:
            q_sum += contrib
        else:
            p_sum += contrib
        term_prev = np.where(active, mag, term_prev)
        if np.max(mag[active]) < 1e-18:
            break
    return np.sqrt(2.0 / (math.pi * t)) * (p_sum * np.cos(omega) - q_sum * np.sin(omega))


def bessel_j(nu, t):
    """Bessel function of the first kind J_nu(t) for nu >= 0, t >= 0.

    Power series for t <= 12, Hankel asymptotics beyond; absolute error is
    at the 1e-10 level on [0, 500] for nu <= 3.
    """
    if nu < 0.0:
        raise ValueError("bessel_j requires nu >= 0")
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("bessel_j requires t >= 0")
    scalar = np.isscalar(t) or np.asarray(t).ndim == 0
    arr = np.atleast_1d(arr).astype(float)
    out = np.empty_like(arr)
    small = arr <= _BESSEL_SWITCH
    if np.any(small):
        out[small] = _bessel_series(float(nu), arr[small])
    if np.any(~small):
        out[~small] = _bessel_asymptotic(float(nu), arr[~small])
    return float(out[0]) if scalar else out


# Bernoulli numbers B_2 .. B_24 for the Euler-Maclaurin tail.
_BERNOULLI = [
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0,
    -174611.0 / 330.0, 854513.0 / 138.0, -236364091.0 / 2730.0,
]


def zeta(s):
    """Riemann zeta for real s > 1, Euler-Maclaurin corrected partial sum.

    Relative accuracy is far below 1e-10 on the whole range the package
    needs (s in (1, 40]).
    """
    s = float(s)
    if not s > 1.0:
        raise ValueError("zeta requires s > 1")
    n = 24
    total = math.fsum(k ** (-s) for k in range(1, n))
    total += 0.5 * n ** (-s)
    total += n ** (1.0 - s) / (s - 1.0)
    fact = 1.0
    for j, b2j in enumerate(_BERNOULLI, start=1):
        fact *= (2.0 * j - 1.0) * (2.0 * j)
        total += b2j / fact * pochhammer(s, 2 * j - 1) * n ** (-(s + 2.0 * j - 1.0))
    return total


def harmonic_dim(d, ell):
    """Dimension of the space of degree-ell spherical harmonics on S^d (exact int)."""
    if d < 1 or ell < 0:
        raise ValueError("harmonic_dim requires d >= 1 and ell >= 0")
    upper = math.comb(d + ell, d)
    lower = math.comb(d + ell - 2, d) if d + ell - 2 >= 0 else 0
    return upper - lower


def polyspace_dim(d, L):
    """Dimension of the space of spherical polynomials of degree <= L on S^d."""
    if d < 1 or L < 0:
        raise ValueError("polyspace_dim requires d >= 1 and L >= 0")
    return math.comb(L + d, d) + (math.comb(L + d - 1, d) if L >= 1 else 0)


@dataclass(frozen=True)
class DimensionTable:
    """Spherical-harmonic dimension counts for a fixed sphere dimension d."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("sphere dimension must be >= 1")

    def h(self, ell):
        return harmonic_dim(self.d, ell)

    def total(self, L):
        return polyspace_dim(self.d, L)
