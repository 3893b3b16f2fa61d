"""Random elliptic (binomial-weighted Gaussian) polynomials and their zeros
mapped to the sphere.

Degree-N polynomials sum_{n=0}^{N} a_n sqrt(binom(N, n)) z^n with i.i.d.
standard complex Gaussian a_n are sampled coefficient-wise (binomial weights
through log space), their N roots found by Aberth-Ehrlich simultaneous
iteration with a final Newton polish, and the roots carried to S^2 by the
inverse stereographic map.
"""

import math
from dataclasses import dataclass

import numpy as np

from .specfun import log_gamma
from .sphere import Configuration, inverse_stereographic

MAX_POLY_DEGREE = 1024


@dataclass(frozen=True)
class EllipticPolynomial:
    """Coefficients c_0..c_N of a degree-N polynomial, leading term nonzero."""

    degree: int
    coeffs: np.ndarray
    seed: object = None

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (self.degree + 1,):
            raise ValueError("coefficient array must have length degree + 1")
        if c[-1] == 0:
            raise ValueError("leading coefficient is zero")
        object.__setattr__(self, "coeffs", c)


@dataclass(frozen=True)
class RootSet:
    """All roots of a polynomial with the relative residual after polishing."""

    roots: np.ndarray
    residual: float

    def __post_init__(self):
        if self.residual > 1e-8:
            raise ValueError(f"root residual {self.residual} exceeds 1e-8")


def sample_elliptic(degree, seed):
    """Draw a random elliptic polynomial of the given degree.

    c_n = a_n sqrt(binom(N, n)) with a_n standard complex Gaussian
    (unit total variance). The weight is exponentiated from log space so
    degrees up to 1024 stay within double range. The astronomically unlikely
    numerically-zero leading coefficient is redrawn.
    """
    if not (1 <= degree <= MAX_POLY_DEGREE):
        raise ValueError(f"degree must be in [1, {MAX_POLY_DEGREE}]")
    rng = np.random.default_rng(seed)
    n = np.arange(degree + 1, dtype=float)
    half_log_binom = 0.5 * (
        log_gamma(degree + 1.0) - log_gamma(n + 1.0) - log_gamma(degree - n + 1.0)
    )
    weights = np.exp(half_log_binom)
    a = (rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)) / math.sqrt(2.0)
    while abs(a[-1]) < 1e-12:
        a[-1] = complex(rng.standard_normal() + 1j * rng.standard_normal()) / math.sqrt(2.0)
    return EllipticPolynomial(degree=degree, coeffs=a * weights, seed=seed)


def _horner_pair(coeffs, z):
    # p(z) and p'(z), coefficients ascending
    p = np.zeros_like(z) + coeffs[-1]
    dp = np.zeros_like(z)
    for c in coeffs[-2::-1]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _newton_ratio(coeffs, z):
    """Newton correction p(z)/p'(z) and relative backward error |p| / sum |c_k| |z|^k.

    For |z| > 1 everything is evaluated through the reversed polynomial at
    w = 1/z (p(z) = z^N q(w), p'(z) = z^(N-1) [N q(w) - w q'(w)]), so no
    intermediate quantity overflows at any degree.
    """
    deg = len(coeffs) - 1
    ratio = np.empty_like(z)
    rel = np.empty(z.shape)
    inner = np.abs(z) <= 1.0

    if np.any(inner):
        zi = z[inner]
        p, dp = _horner_pair(coeffs, zi)
        b, _ = _horner_pair(np.abs(coeffs), np.abs(zi).astype(complex))
        dp = np.where(dp == 0, 1e-300, dp)
        ratio[inner] = p / dp
        rel[inner] = np.abs(p) / np.maximum(np.abs(b), 1e-300)

    if np.any(~inner):
        zo = z[~inner]
        w = 1.0 / zo
        rev = coeffs[::-1]
        q, dq = _horner_pair(rev, w)
        b, _ = _horner_pair(np.abs(rev), np.abs(w).astype(complex))
        denom = deg * q - w * dq
        denom = np.where(denom == 0, 1e-300, denom)
        ratio[~inner] = zo * q / denom
        rel[~inner] = np.abs(q) / np.maximum(np.abs(b), 1e-300)

    return ratio, rel


def _aberth(coeffs, max_iter=200, tol=1e-13):
    deg = len(coeffs) - 1
    scale = float(np.max(np.abs(coeffs)))
    c = coeffs / scale
    eps = np.finfo(float).eps

    r0 = max((abs(c[0]) / abs(c[-1])) ** (1.0 / deg), 1e-3) if c[0] != 0 else 1e-3
    golden = 0.5 * (math.sqrt(5.0) - 1.0)
    for attempt in range(6):
        radius = r0 * (1.0 + 0.1 * attempt)
        angles = 2.0 * math.pi * (np.arange(deg) + 0.5) / deg + golden * attempt
        z = radius * np.exp(1j * angles)
        converged = False
        for _ in range(max_iter):
            w, rel = _newton_ratio(c, z)
            done = rel <= 8.0 * eps
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = np.sum(1.0 / diff, axis=1)
            denom = 1.0 - w * s
            denom = np.where(np.abs(denom) < 1e-300, 1.0, denom)
            step = np.where(done, 0.0, w / denom)
            z = z - step
            if np.max(np.abs(step) / (1.0 + np.abs(z))) < tol:
                converged = True
                break
        if converged and np.all(np.isfinite(z)):
            polish, _ = _newton_ratio(c, z)
            small = np.abs(polish) < 1e-6 * (1.0 + np.abs(z))
            z = np.where(small, z - polish, z)
            return z
    raise RuntimeError(
        f"Aberth iteration failed to converge for degree {deg} after 6 restarts"
    )


def find_roots(poly):
    """All roots of an EllipticPolynomial, with a backward-error residual.

    Aberth-Ehrlich iteration from a jittered circle of radius
    (|c_0 / c_N|)^(1/N), one Newton polish per root, and the residual
    max_j |p(z_j)| / sum_n |c_n| |z_j|^n recorded.
    """
    c = poly.coeffs / np.max(np.abs(poly.coeffs))
    roots = _aberth(c)
    _, rel = _newton_ratio(c, roots)
    return RootSet(roots=roots, residual=float(np.max(rel)))


def zeros_on_sphere(degree, seed):
    """Zeros of a random degree-N elliptic polynomial, mapped to S^2.

    Roots of huge modulus (|z| > 1e6) go through the reciprocal branch of
    the stereographic map, so near-pole zeros are handled stably.
    """
    poly = sample_elliptic(degree, seed)
    roots = find_roots(poly).roots
    pts = inverse_stereographic(roots)
    return Configuration(d=2, points=pts, label="elliptic", seed=seed)
