import math

import numpy as np
import pytest
from scipy.spatial import cKDTree

from sphereqmc import (
    EllipticPolynomial,
    expected_log_energy_elliptic,
    find_roots,
    log_energy,
    sample_elliptic,
    zeros_on_sphere,
)


class TestSampleElliptic:
    def test_degree_one(self):
        poly = sample_elliptic(1, 0)
        assert poly.coeffs.shape == (2,)
        assert poly.degree == 1

    def test_determinism(self):
        a = sample_elliptic(16, 5)
        b = sample_elliptic(16, 5)
        assert np.array_equal(a.coeffs, b.coeffs)

    def test_coefficient_variances(self):
        # Var(c_n) = binom(N, n); pooled chi-square test at the 1% level
        deg = 64
        reps = 2000
        draws = np.array([sample_elliptic(deg, 1000 + r).coeffs for r in range(reps)])
        binom = np.array([math.comb(deg, n) for n in range(deg + 1)], dtype=float)
        # |c_n|^2 / binom ~ (1/2) chi^2_2, so 2 * sum over all draws and n
        # is chi^2 with 2 * reps * (deg+1) degrees of freedom
        stat = 2.0 * float(np.sum(np.abs(draws) ** 2 / binom[None, :]))
        dof = 2 * reps * (deg + 1)
        # normal approximation to the chi-square tail at the 1% two-sided level
        zscore = (stat - dof) / math.sqrt(2.0 * dof)
        assert abs(zscore) < 2.58

    def test_degree_cap(self):
        with pytest.raises(ValueError):
            sample_elliptic(2000, 0)


class TestFindRoots:
    def test_quadratic(self):
        poly = EllipticPolynomial(degree=2, coeffs=np.array([-1.0, 0.0, 1.0], dtype=complex))
        rs = find_roots(poly)
        got = sorted(rs.roots, key=lambda z: z.real)
        assert abs(got[0] - (-1.0)) < 1e-12
        assert abs(got[1] - 1.0) < 1e-12
        assert rs.residual <= 1e-8

    def test_vieta_sum_and_product(self):
        poly = sample_elliptic(32, 4)
        rs = find_roots(poly)
        c = poly.coeffs
        sum_want = -c[-2] / c[-1]
        prod_want = (-1.0) ** 32 * c[0] / c[-1]
        assert abs(np.sum(rs.roots) - sum_want) / abs(sum_want) < 1e-6
        assert abs(np.prod(rs.roots) - prod_want) / abs(prod_want) < 1e-6
        assert rs.residual <= 1e-8

    @staticmethod
    def _separated_sphere_roots(seed, n, min_chord=0.25):
        # well-separated sphere points keep the coefficients -> roots map
        # well conditioned, so this isolates the finder's own error;
        # clustered roots are limited by double-precision coefficients
        # themselves, not by the iteration
        rng = np.random.default_rng(seed)
        pts = []
        while len(pts) < n:
            p = rng.standard_normal(3)
            p /= np.linalg.norm(p)
            if p[2] > 0.9:
                continue
            if all(np.linalg.norm(p - q) >= min_chord for q in pts):
                pts.append(p)
        pts = np.array(pts)
        return (pts[:, 0] + 1j * pts[:, 1]) / (1.0 - pts[:, 2])

    @pytest.mark.parametrize("deg", [16, 64, 128])
    def test_reconstructed_known_roots(self, deg):
        true = self._separated_sphere_roots(deg, deg)
        poly = EllipticPolynomial(degree=deg, coeffs=np.poly(true)[::-1])
        got = find_roots(poly).roots
        a = np.column_stack([got.real, got.imag])
        b = np.column_stack([true.real, true.imag])
        dist, idx = cKDTree(b).query(a)
        assert len(set(idx)) == deg  # one-to-one pairing
        assert dist.max() < 1e-8

    def test_zero_leading_coefficient_rejected(self):
        with pytest.raises(ValueError):
            EllipticPolynomial(degree=2, coeffs=np.array([1.0, 1.0, 0.0], dtype=complex))


class TestZerosOnSphere:
    def test_count_and_label(self):
        cfg = zeros_on_sphere(32, 0)
        assert cfg.n_points == 32
        assert cfg.label == "elliptic"
        assert np.max(np.abs(np.linalg.norm(cfg.points, axis=1) - 1.0)) < 1e-12

    def test_two_points_distinct(self):
        for seed in range(20):
            cfg = zeros_on_sphere(2, seed)
            assert np.linalg.norm(cfg.points[0] - cfg.points[1]) > 1e-8

    def test_determinism(self):
        a = zeros_on_sphere(16, 9)
        b = zeros_on_sphere(16, 9)
        assert np.array_equal(a.points, b.points)

    def test_rotation_invariance_of_intensity(self):
        # counts in 10 equal-area latitude bands over many replicates
        reps = 2500
        deg = 16
        z = np.concatenate([
            zeros_on_sphere(deg, 40_000 + r).points[:, 2] for r in range(reps)
        ])
        edges = np.linspace(-1.0, 1.0, 11)
        counts, _ = np.histogram(z, bins=edges)
        total = z.size
        p = 0.1
        sigma = math.sqrt(total * p * (1.0 - p))
        assert np.max(np.abs(counts - total * p)) <= 3.0 * sigma

    def test_log_energy_law(self):
        reps = 1200
        vals = np.array([log_energy(zeros_on_sphere(32, 60_000 + r)) for r in range(reps)])
        ref = expected_log_energy_elliptic(32).value
        se = vals.std(ddof=1) / math.sqrt(reps)
        assert abs(vals.mean() - ref) <= 3.0 * se

    def test_high_degree_far_roots_are_stable(self):
        # degree large enough that some roots sit far out in the plane
        cfg = zeros_on_sphere(512, 3)
        assert cfg.n_points == 512
        assert np.all(np.isfinite(cfg.points))
