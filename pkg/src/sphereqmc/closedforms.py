"""Exact and asymptotic reference values for the random ensembles.

Expected Riesz energies of the spherical ensemble and of elliptic-polynomial
zeros, the exact finite-N expected squared worst-case error of the spherical
ensemble, the harmonic-ensemble expectation reduced to a one-dimensional
Jacobi-weighted integral, and the Bessel-integral limit that governs the
large-degree behavior of that integral. These serve as oracles for the
Monte Carlo acceptance suite.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .quadrature import gauss_jacobi, gauss_legendre
from .specfun import (
    bessel_j,
    gamma_ratio,
    gamma_real,
    jacobi_eval,
    jacobi_value_at_one,
    kernel_jacobi_params,
    log_gamma,
    zeta,
)


@dataclass(frozen=True)
class ExpectedValue:
    """A reference expectation, exact or asymptotic-with-known-order."""

    value: float
    kind: str  # "exact" or "asymptotic"
    error_term: Optional[str] = None

    def __post_init__(self):
        if self.kind not in ("exact", "asymptotic"):
            raise ValueError("kind must be 'exact' or 'asymptotic'")
        if self.kind == "exact" and self.error_term is not None:
            raise ValueError("exact values carry no error term")
        if self.kind == "asymptotic" and not self.error_term:
            raise ValueError("asymptotic values must state their error order")


def _check_riesz_exponent(s):
    if s >= 4.0:
        raise ValueError("expected-energy formulas require s < 4")
    if abs(s) < 1e-12 or abs(s - 2.0) < 1e-12:
        raise ValueError("s = 0 and s = 2 are excluded from the energy formula")


def expected_energy_spherical(n_points, s):
    """Exact expected Riesz s-energy of n_points from the spherical ensemble.

    E[E_s] = 2^(1-s)/(2-s) N^2 - Gamma(N) Gamma(1-s/2) / (2^s Gamma(N+1-s/2)) N^2,
    valid for s < 4, s not in {0, 2}.
    """
    if n_points < 1:
        raise ValueError("need n_points >= 1")
    _check_riesz_exponent(s)
    n = float(n_points)
    lead = 2.0 ** (1.0 - s) / (2.0 - s) * n * n
    sub = gamma_real(1.0 - s / 2.0) * gamma_ratio(n, 1.0 - s / 2.0) / 2.0 ** s * n * n
    return ExpectedValue(value=lead - sub, kind="exact")


def expected_wce2_spherical(n_points, s):
    """Exact E[wce^2] in H^s(S^2) for the spherical ensemble, 1 < s < 2.

    Equals 2^(2s) Gamma(s) / 4 * Gamma(N) / Gamma(N + s); identical to
    plugging the exact expected energy into the energy formula for wce^2.
    """
    if not (1.0 < s < 2.0):
        raise ValueError("the exact expected wce^2 needs s strictly in (1, 2)")
    if n_points < 1:
        raise ValueError("need n_points >= 1")
    n = float(n_points)
    value = 2.0 ** (2.0 * s) * math.exp(log_gamma(s)) / 4.0 * gamma_ratio(n, s)
    return ExpectedValue(value=value, kind="exact")


def elliptic_subleading_coefficient(s):
    """Coefficient C(s) of the N^(1+s/2) term in the expected elliptic energy.

    C(s) = 2^(-s) (s/2)(1 + s/2) Gamma(1 - s/2) zeta(1 - s/2). Only arguments
    with zeta evaluated beyond 1 (that is, s < 0) are supported.
    """
    if s >= 0.0:
        raise ValueError(
            "C(s) needs zeta(1 - s/2) with 1 - s/2 > 1, so only s < 0 is supported"
        )
    half = s / 2.0
    return 2.0 ** (-s) * half * (1.0 + half) * gamma_real(1.0 - half) * zeta(1.0 - half)


def expected_energy_elliptic(n_points, s):
    """Expected Riesz s-energy of N zeros of a degree-N elliptic polynomial.

    Two-term asymptotic expansion 2^(1-s)/(2-s) N^2 + C(s) N^(1+s/2) with a
    o(N^(1+s/2)) remainder. s = -2 is degenerate (C(-2) = 0) and returns the
    third-order law 2 N^2 - 8 zeta(3)/N with o(1/N) remainder; s = 0 is the
    exact logarithmic law. Exponents 0 < s < 4 would need zeta at arguments
    at or below 1 and are rejected as unsupported.
    """
    if n_points < 1:
        raise ValueError("need n_points >= 1")
    if abs(s) < 1e-12:
        return expected_log_energy_elliptic(n_points)
    _check_riesz_exponent(s)
    n = float(n_points)
    if abs(s + 2.0) < 1e-12:
        value = 2.0 * n * n - 8.0 * zeta(3.0) / n
        return ExpectedValue(value=value, kind="asymptotic", error_term="o(1/N)")
    if s > 0.0:
        raise ValueError(
            "expected_energy_elliptic supports s < 0 (and s = 0 via the exact "
            f"logarithmic law); got s = {s}"
        )
    lead = 2.0 ** (1.0 - s) / (2.0 - s) * n * n
    sub = elliptic_subleading_coefficient(s) * n ** (1.0 + s / 2.0)
    return ExpectedValue(
        value=lead + sub, kind="asymptotic", error_term=f"o(N^{1.0 + s / 2.0:g})"
    )


def expected_log_energy_elliptic(n_points):
    """Exact expected logarithmic energy of elliptic-polynomial zeros on S^2.

    (1/2 - log 2) N^2 - (1/2) N log N - (1/2 - log 2) N.
    """
    if n_points < 1:
        raise ValueError("need n_points >= 1")
    n = float(n_points)
    c = 0.5 - math.log(2.0)
    value = c * n * n - 0.5 * n * math.log(n) - c * n
    return ExpectedValue(value=value, kind="exact")


def expected_wce2_harmonic_quadrature(d, L, s, n_nodes=None):
    """E[wce^2] in H^s(S^d) for the degree-L harmonic ensemble.

    Reduces to the zonal integral

        c_d 2^(s - d/2) / P_L(1)^2 *
            integral_{-1}^{1} P_L(t)^2 (1-t)^(s-1) (1+t)^(d/2-1) dt

    with P_L the Jacobi polynomial of the kernel and c_d the zonal-reduction
    constant Gamma((d+1)/2) / (sqrt(pi) Gamma(d/2)). The integral is done by
    Gauss-Jacobi with the full weight, which is exact for the polynomial
    integrand, so the result is exact up to rounding.
    """
    if not (d / 2.0 < s < d / 2.0 + 1.0):
        raise ValueError("the zonal reduction needs d/2 < s < d/2 + 1")
    if L < 0:
        raise ValueError("need L >= 0")
    if n_nodes is None:
        n_nodes = 4 * L + 64
    if n_nodes < L + 1:
        raise ValueError("node count too small for exact integration")
    params = kernel_jacobi_params(d)
    nodes, weights = gauss_jacobi(n_nodes, s - 1.0, d / 2.0 - 1.0)
    p_vals = jacobi_eval(params, L, nodes)
    integral = float(np.sum(weights * p_vals * p_vals))
    c_d = math.exp(log_gamma((d + 1.0) / 2.0) - log_gamma(d / 2.0)) / math.sqrt(math.pi)
    p_one = jacobi_value_at_one(params, L)
    value = c_d * 2.0 ** (s - d / 2.0) / (p_one * p_one) * integral
    return ExpectedValue(value=value, kind="exact")


def proposition7_lhs(d, a, L, n_nodes=None):
    """Scaled Jacobi integral L^(-a) * int P_L(t)^2 (1-t)^(lam - a/2) (1+t)^lam dt.

    lam = (d-2)/2 and P_L the kernel Jacobi polynomial. Gauss-Jacobi in the
    full weight makes the quadrature exact.
    """
    if not (-1.0 < a < d):
        raise ValueError("need -1 < a < d")
    if L < 1:
        raise ValueError("need L >= 1")
    lam = (d - 2.0) / 2.0
    if n_nodes is None:
        n_nodes = max(L + 1, 64)
    nodes, weights = gauss_jacobi(n_nodes, lam - a / 2.0, lam)
    p_vals = jacobi_eval(kernel_jacobi_params(d), L, nodes)
    return float(L ** (-a) * np.sum(weights * p_vals * p_vals))


def proposition7_limit(d, a, cutoff=2000.0):
    """Large-degree limit of proposition7_lhs: the Bessel integral

        2^(a/2 + d) * int_0^inf J_{1+lam}(t)^2 / t^(1+a) dt,

    which converges exactly for -1 < a < d. Quadrature: a Jacobi-weighted
    rule near zero (the integrand is t^(d-1-a) times an analytic function),
    half-period Gauss-Legendre panels through the oscillatory range, and an
    analytic tail from the large-argument form of J^2.
    """
    if not (-1.0 < a < d):
        raise ValueError("the integral converges only for -1 < a < d")
    nu = 1.0 + (d - 2.0) / 2.0

    # [0, 1]: weight t^(d-1-a), analytic remainder J(t)^2 / t^d
    beta = d - 1.0 - a
    nodes, weights = gauss_jacobi(48, 0.0, beta)
    t0 = (nodes + 1.0) / 2.0
    f0 = bessel_j(nu, t0) ** 2 / t0 ** d
    part0 = 2.0 ** (-beta - 1.0) * float(np.sum(weights * f0))

    # [1, cutoff]: half-period panels
    n_panels = int(math.ceil((cutoff - 1.0) / (math.pi / 2.0)))
    edges = np.linspace(1.0, cutoff, n_panels + 1)
    x16, w16 = gauss_legendre(16)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    ts = (mid[:, None] + half[:, None] * x16[None, :]).ravel()
    ws = (half[:, None] * w16[None, :]).ravel()
    vals = bessel_j(nu, ts) ** 2 / ts ** (1.0 + a)
    part1 = float(np.sum(ws * vals))

    # analytic tail from J^2 ~ (1/(pi t)) [1 + (mu-1)/(8 t^2) + sin-type term]
    mu = 4.0 * nu * nu
    T = cutoff
    tail = (T ** (-1.0 - a) / (1.0 + a) + (mu - 1.0) / (8.0 * (3.0 + a)) * T ** (-3.0 - a)) / math.pi
    tail += T ** (-2.0 - a) * math.cos(2.0 * T - nu * math.pi) / (2.0 * math.pi)

    return 2.0 ** (a / 2.0 + d) * (part0 + part1 + tail)
