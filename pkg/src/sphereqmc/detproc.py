"""Exact sampling of rank-N projection determinantal point processes.

The sampler draws points one at a time from the explicit conditional
densities of a projection DPP (the sequential HKPV scheme): after accepting
y_1..y_k, the next point has density

    p_k(x) = [K(x, x) - v(x)^H G_k^{-1} v(x)] / (N - k)

with respect to the uniform measure, where v(x) = (K(y_1, x), ..., K(y_k, x))
and G_k is the Gram matrix of the accepted points. Both kernels shipped here
have constant diagonal equal to their rank, so uniform proposals with the
envelope K(x,x)/(N-k) give a clean rejection sampler whose very first draw
is accepted with probability one.

Complex arithmetic is used throughout so the real harmonic kernel and the
genuinely complex spherical-ensemble kernel share one code path.
"""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.linalg import solve_triangular
from threadpoolctl import threadpool_limits

from .sphere import Configuration
from .specfun import jacobi_eval, jacobi_value_at_one, kernel_jacobi_params, polyspace_dim

_REFACTOR_EVERY = 32
_MAX_DEGENERACIES = 100


@dataclass(frozen=True)
class ProjectionKernel:
    """Hermitian rank-N projection kernel on S^d with its sampling envelope.

    `evaluate(X, Y)` returns the complex matrix K(x_i, y_j) for point arrays
    of shapes (m, d+1) and (n, d+1); `diagonal(X)` returns the real values
    K(x_i, x_i). `diagonal_bound` is sup_x K(x, x); for the kernels built
    here the diagonal is constant and equals the rank.
    """

    rank: int
    d: int
    diagonal_bound: float
    label: str
    evaluate: Callable = field(repr=False)
    diagonal: Callable = field(repr=False)

    def gram(self, points):
        """Gram matrix K(x_i, x_j) of a point array."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return self.evaluate(pts, pts)


def harmonic_kernel(d, L):
    """Reproducing kernel of the degree <= L spherical polynomials on S^d.

    K_L(x, y) = (N / binom(L + d/2, L)) * P_L^(1+lam, lam)(<x, y>) with
    N = dim P_L(S^d) and lam = (d-2)/2; K(x, x) = N.
    """
    if d < 1 or L < 0:
        raise ValueError("need d >= 1 and L >= 0")
    n_rank = polyspace_dim(d, L)
    params = kernel_jacobi_params(d)
    scale = n_rank / jacobi_value_at_one(params, L)

    def evaluate(xs, ys):
        t = np.clip(np.atleast_2d(xs) @ np.atleast_2d(ys).T, -1.0, 1.0)
        return (scale * jacobi_eval(params, L, t)).astype(complex)

    def diagonal(xs):
        return np.full(np.atleast_2d(xs).shape[0], float(n_rank))

    return ProjectionKernel(
        rank=n_rank, d=d, diagonal_bound=float(n_rank),
        label=f"harmonic(d={d},L={L})", evaluate=evaluate, diagonal=diagonal,
    )


def _spinor(points):
    # (cos(theta/2) e^{i phi}, sin(theta/2)) per row, theta from the north pole
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    z = np.clip(pts[:, 2], -1.0, 1.0)
    cos_half = np.sqrt((1.0 + z) / 2.0)
    sin_half = np.sqrt((1.0 - z) / 2.0)
    u = pts[:, 0] + 1j * pts[:, 1]
    r = np.abs(u)
    phase = np.where(r > 0.0, u / np.where(r > 0.0, r, 1.0), 1.0 + 0j)
    return cos_half * phase, sin_half


def spherical_kernel(n):
    """Spherical-ensemble projection kernel on S^2, rank n.

    In the plane the process has kernel (1 + z conj(w))^(n-1) against the
    measure n / (pi (1 + |z|^2)^(n+1)) dm(z); pulled back through the
    stereographic map and normalized so the diagonal integrates to n, it
    becomes K(x, y) = n <zeta_x, zeta_y>^(n-1) for the half-angle spinor
    coordinates zeta = (cos(theta/2) e^{i phi}, sin(theta/2)). The inner
    product has modulus at most one, so no overflow is possible anywhere,
    poles included.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n > 2048:
        raise ValueError("spherical kernel is capped at n = 2048")

    def evaluate(xs, ys):
        ax, bx = _spinor(xs)
        ay, by = _spinor(ys)
        inner = ax[:, None] * np.conj(ay)[None, :] + bx[:, None] * by[None, :]
        return n * inner ** (n - 1)

    def diagonal(xs):
        return np.full(np.atleast_2d(xs).shape[0], float(n))

    return ProjectionKernel(
        rank=n, d=2, diagonal_bound=float(n),
        label=f"spherical(n={n})", evaluate=evaluate, diagonal=diagonal,
    )


def hkpv_sample(kernel, seed, return_stats=False):
    """Draw one exact sample of the projection DPP defined by `kernel`.

    Sequential conditional sampling with uniform-proposal rejection. The
    Cholesky factor of the running Gram matrix is extended one row per
    accepted point and refactorized from scratch every 32 points. A
    numerically degenerate acceptance (negative Schur complement beyond
    rounding) is discarded and resampled; more than 100 such events abort
    with a diagnostic.
    """
    # the linear algebra here is all small; threaded BLAS only adds
    # spin-wait overhead, an order of magnitude at desk scale
    with threadpool_limits(limits=1, user_api="blas"):
        return _hkpv_sample_inner(kernel, seed, return_stats)


def _hkpv_sample_inner(kernel, seed, return_stats):
    n = kernel.rank
    d = kernel.d
    rng = np.random.default_rng(seed)
    points = np.empty((n, d + 1))
    # inverse of the lower Cholesky factor of the running Gram matrix; kept
    # explicitly so each proposal batch costs one matmul instead of a
    # triangular solve
    linv = np.zeros((n, n), dtype=complex)
    bound = kernel.diagonal_bound

    n_proposals = 0
    n_degenerate = 0
    for k in range(n):
        remaining = n - k
        batch = min(4096, int(math.ceil(1.2 * bound / remaining)) + 8)
        proposal_budget = 200 * int(math.ceil(bound / remaining)) + 1000
        spent = 0
        accepted = False
        while not accepted:
            if spent > proposal_budget:
                raise RuntimeError(
                    f"rejection sampler exceeded its proposal budget at point {k}"
                )
            props = rng.standard_normal((batch, d + 1))
            props /= np.linalg.norm(props, axis=1)[:, None]
            unif = rng.random(batch)
            diag = kernel.diagonal(props)
            if k == 0:
                residuals = diag.astype(float).copy()
            else:
                v = kernel.evaluate(points[:k], props)
                w = linv[:k, :k] @ v
                residuals = diag - np.sum(np.abs(w) ** 2, axis=0)
            for j in range(batch):
                n_proposals += 1
                spent += 1
                res = residuals[j]
                if res < -1e-8 * n:
                    n_degenerate += 1
                    if n_degenerate > _MAX_DEGENERACIES:
                        raise RuntimeError(
                            "too many numerically degenerate conditional "
                            f"densities (point {k} of {n})"
                        )
                    continue
                if unif[j] * bound < res:
                    points[k] = props[j]
                    root = math.sqrt(max(res, 1e-300))
                    if k > 0:
                        linv[k, :k] = -(np.conj(w[:, j]) @ linv[:k, :k]) / root
                    linv[k, k] = 1.0 / root
                    accepted = True
                    break
        if (k + 1) % _REFACTOR_EVERY == 0 and k + 1 < n:
            gram = kernel.gram(points[:k + 1])
            try:
                chol = np.linalg.cholesky(gram)
                linv[:k + 1, :k + 1] = solve_triangular(
                    chol, np.eye(k + 1, dtype=complex), lower=True, check_finite=False
                )
            except np.linalg.LinAlgError:
                n_degenerate += 1
                if n_degenerate > _MAX_DEGENERACIES:
                    raise RuntimeError(
                        "Gram matrix lost positive definiteness during "
                        f"refactorization at point {k + 1} of {n}"
                    )

    cfg = Configuration(d=d, points=points, label=kernel.label, seed=seed)
    if return_stats:
        stats = {
            "n_proposals": n_proposals,
            "acceptance_rate": n / max(n_proposals, 1),
            "n_degenerate": n_degenerate,
        }
        return cfg, stats
    return cfg
