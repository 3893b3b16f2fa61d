"""Quadrature rules and low-discrepancy node sets.

Gauss-Legendre nodes come from numpy's Legendre module; Gauss-Jacobi rules
are built by Golub-Welsch from the classical recurrence coefficients, so a
rule with n nodes integrates polynomials of degree 2n - 1 exactly against
the weight (1-t)^alpha (1+t)^beta.
"""

import math

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.linalg import eigh_tridiagonal

from .specfun import log_gamma


def gauss_legendre(n, a=-1.0, b=1.0):
    """Gauss-Legendre nodes and weights on [a, b]."""
    if n < 1:
        raise ValueError("need at least one node")
    x, w = leggauss(int(n))
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return mid + half * x, half * w


def gauss_jacobi(n, alpha, beta):
    """Gauss-Jacobi nodes and weights on [-1, 1] for (1-t)^alpha (1+t)^beta.

    Golub-Welsch: eigenvalues of the symmetrized recurrence matrix are the
    nodes, weights are mu0 times the squared first eigenvector components.
    """
    if n < 1:
        raise ValueError("need at least one node")
    if alpha <= -1.0 or beta <= -1.0:
        raise ValueError("Jacobi weight requires alpha > -1 and beta > -1")
    n = int(n)
    k = np.arange(n, dtype=float)
    ab = alpha + beta
    diag = np.empty(n)
    diag[0] = (beta - alpha) / (ab + 2.0)
    if n > 1:
        kk = k[1:]
        diag[1:] = (beta * beta - alpha * alpha) / (
            (2.0 * kk + ab) * (2.0 * kk + ab + 2.0)
        )
        bsq = np.empty(n - 1)
        # k = 1 separately: the general formula is 0/0 when alpha+beta = -1
        bsq[0] = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0) ** 2 * (ab + 3.0))
        if n > 2:
            kk = k[2:]
            bsq[1:] = (
                4.0 * kk * (kk + alpha) * (kk + beta) * (kk + ab)
                / ((2.0 * kk + ab) ** 2 * (2.0 * kk + ab + 1.0) * (2.0 * kk + ab - 1.0))
            )
        off = np.sqrt(bsq)
    else:
        off = np.empty(0)
    nodes, vecs = eigh_tridiagonal(diag, off)
    mu0 = math.exp(
        (ab + 1.0) * math.log(2.0)
        + log_gamma(alpha + 1.0) + log_gamma(beta + 1.0) - log_gamma(ab + 2.0)
    )
    weights = mu0 * vecs[0, :] ** 2
    return nodes, weights


def fibonacci_sphere(n):
    """n near-uniform points on S^2 along the Fibonacci spiral, as (n, 3)."""
    if n < 1:
        raise ValueError("need at least one node")
    i = np.arange(n, dtype=float)
    z = 1.0 - (2.0 * i + 1.0) / n
    phi = i * math.pi * (3.0 - math.sqrt(5.0))
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
