"""Discrete Riesz and logarithmic energies, and the continuous energy of the
uniform measure on S^d.

Pair sums use compensated accumulation (vectorized Neumaier lanes combined
with exact fsum) so results are reproducible to near machine precision
independent of platform summation order.
"""

import math

import numpy as np

from .specfun import log_gamma

_CHUNK = 4096


def compensated_sum(values):
    """Sum of an array with Neumaier compensation per lane plus exact fsum.

    The array is processed in fixed 4096-wide lanes, so the reduction order
    is deterministic regardless of threading or platform.
    """
    a = np.asarray(values, dtype=float).ravel()
    if a.size == 0:
        return 0.0
    if a.size <= _CHUNK:
        return math.fsum(a.tolist())
    pad = (-a.size) % _CHUNK
    if pad:
        a = np.concatenate([a, np.zeros(pad)])
    a = a.reshape(-1, _CHUNK)
    s = a[0].copy()
    c = np.zeros(_CHUNK)
    for row in a[1:]:
        t = s + row
        big = np.abs(s) >= np.abs(row)
        c += np.where(big, (s - t) + row, (row - t) + s)
        s = t
    return math.fsum(s.tolist()) + math.fsum(c.tolist())


def pair_distances(cfg):
    """Condensed upper-triangle chordal distances sqrt(2 - 2 <x_i, x_j>)."""
    return distances_from_gram(cfg.inner_products())


def distances_from_gram(gram):
    """Condensed pair distances from a clipped Gram matrix."""
    t = np.asarray(gram)
    n = t.shape[0]
    iu = np.triu_indices(n, k=1)
    return np.sqrt(np.maximum(0.0, 2.0 - 2.0 * t[iu]))


def _check_nonsingular(r, indices, what):
    zero = np.nonzero(r == 0.0)[0]
    if zero.size:
        i, j = indices[0][zero[0]], indices[1][zero[0]]
        raise ValueError(
            f"{what} is singular: points {i} and {j} coincide"
        )


def riesz_energy(cfg, s):
    """Riesz s-energy sum over ordered pairs, sum_{i != j} |x_i - x_j|^(-s).

    Negative s means positive powers of the distance. s = 0 is rejected; use
    log_energy for the logarithmic case. Coincident points are an error for
    s > 0 (the energy would be infinite).
    """
    if s == 0.0:
        raise ValueError("s = 0 is the logarithmic case; use log_energy")
    n = cfg.n_points
    if n < 2:
        raise ValueError("energy needs at least 2 points")
    t = cfg.inner_products()
    iu = np.triu_indices(n, k=1)
    r = np.sqrt(np.maximum(0.0, 2.0 - 2.0 * t[iu]))
    if s > 0.0:
        _check_nonsingular(r, iu, "Riesz energy with s > 0")
    return 2.0 * compensated_sum(r ** (-s))


def log_energy(cfg):
    """Logarithmic energy sum_{i != j} log(1 / |x_i - x_j|)."""
    n = cfg.n_points
    if n < 2:
        raise ValueError("energy needs at least 2 points")
    t = cfg.inner_products()
    iu = np.triu_indices(n, k=1)
    r = np.sqrt(np.maximum(0.0, 2.0 - 2.0 * t[iu]))
    _check_nonsingular(r, iu, "logarithmic energy")
    return -2.0 * compensated_sum(np.log(r))


def continuous_energy(d, s):
    """Energy of the uniform measure on S^d for the Riesz kernel r^(-s).

    Closed form 2^(d-s-1) Gamma((d+1)/2) Gamma((d-s)/2)
    / (sqrt(pi) Gamma(d - s/2)), valid for s < d, s != 0.
    """
    if s >= d:
        raise ValueError("continuous energy requires s < d")
    if s == 0.0:
        raise ValueError("s = 0 is the logarithmic case")
    return math.exp(
        (d - s - 1.0) * math.log(2.0)
        + log_gamma((d + 1.0) / 2.0)
        + log_gamma((d - s) / 2.0)
        - 0.5 * math.log(math.pi)
        - log_gamma(d - s / 2.0)
    )
