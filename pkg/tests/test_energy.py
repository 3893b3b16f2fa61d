import math

import numpy as np
import pytest

from sphereqmc import (
    Configuration,
    compensated_sum,
    continuous_energy,
    log_energy,
    riesz_energy,
    sample_uniform,
)


def antipodal():
    return Configuration(d=2, points=np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]))


def equatorial_square():
    return Configuration(d=2, points=np.array(
        [[1.0, 0, 0], [0, 1.0, 0], [-1.0, 0, 0], [0, -1.0, 0]]
    ))


def naive_energy(points, s):
    """Independent double-loop oracle."""
    n = len(points)
    total = 0.0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            r = math.dist(points[i], points[j])
            total += -math.log(r) if s == 0.0 else r ** (-s)
    return total


def random_rotation(rng, dim):
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))


class TestCompensatedSum:
    def test_matches_fsum(self):
        rng = np.random.default_rng(0)
        a = rng.standard_normal(100000) * 10.0 ** rng.integers(-8, 8, 100000)
        assert compensated_sum(a) == pytest.approx(math.fsum(a.tolist()), rel=1e-15)

    def test_empty(self):
        assert compensated_sum(np.array([])) == 0.0


class TestRieszEnergy:
    def test_antipodal_examples(self):
        assert riesz_energy(antipodal(), -1.0) == pytest.approx(4.0, rel=1e-14)
        assert log_energy(antipodal()) == pytest.approx(-2.0 * math.log(2.0), rel=1e-14)

    def test_square_log_energy(self):
        # 8 ordered pairs at distance sqrt(2), 4 at distance 2
        want = -(8.0 * math.log(math.sqrt(2.0)) + 4.0 * math.log(2.0))
        assert log_energy(equatorial_square()) == pytest.approx(want, rel=1e-13)

    def test_double_loop_oracle(self):
        cfg = sample_uniform(2, 8, 3)
        for s in [-2.0, -1.0, 0.5, 1.0]:
            assert riesz_energy(cfg, s) == pytest.approx(
                naive_energy(cfg.points, s), rel=1e-12
            )
        assert log_energy(cfg) == pytest.approx(naive_energy(cfg.points, 0.0), rel=1e-12)

    def test_permutation_invariance(self):
        rng = np.random.default_rng(5)
        cfg = sample_uniform(2, 16, 6)
        perm = rng.permutation(16)
        shuffled = Configuration(d=2, points=cfg.points[perm])
        assert log_energy(shuffled) == pytest.approx(log_energy(cfg), rel=1e-13)
        assert riesz_energy(shuffled, 1.0) == pytest.approx(
            riesz_energy(cfg, 1.0), rel=1e-13
        )

    def test_rotation_invariance(self):
        rng = np.random.default_rng(6)
        cfg = sample_uniform(2, 20, 7)
        for _ in range(5):
            rot = random_rotation(rng, 3)
            rotated = Configuration(d=2, points=cfg.points @ rot.T)
            assert riesz_energy(rotated, 1.5) == pytest.approx(
                riesz_energy(cfg, 1.5), rel=1e-10
            )

    def test_coincident_points_rejected_for_positive_s(self):
        pts = np.array([[0, 0, 1.0], [0, 0, 1.0], [1.0, 0, 0]])
        cfg = Configuration(d=2, points=pts)
        with pytest.raises(ValueError, match="coincide"):
            riesz_energy(cfg, 1.0)
        with pytest.raises(ValueError, match="coincide"):
            log_energy(cfg)
        # negative s: distance^positive power, coincidences contribute zero
        assert riesz_energy(cfg, -2.0) == pytest.approx(2.0 * 2.0 * 2.0, rel=1e-13)

    def test_needs_two_points(self):
        one = Configuration(d=2, points=np.array([[0.0, 0.0, 1.0]]))
        with pytest.raises(ValueError):
            riesz_energy(one, 1.0)

    def test_s_zero_routed_to_log(self):
        with pytest.raises(ValueError):
            riesz_energy(antipodal(), 0.0)

    def test_smoothness_in_s(self):
        # second difference matches the exact second derivative
        # d^2/ds^2 sum r^{-s} = sum (log r)^2 r^{-s}
        cfg = sample_uniform(2, 12, 8)
        pts = cfg.points
        n = 12
        iu = np.triu_indices(n, k=1)
        r = np.sqrt(np.maximum(0.0, 2.0 - 2.0 * (pts @ pts.T)[iu]))
        h = 1e-4
        for s in [-3.0, -1.0, 0.5, 1.9]:
            fd2 = (
                riesz_energy(cfg, s + h) - 2.0 * riesz_energy(cfg, s) + riesz_energy(cfg, s - h)
            ) / h ** 2
            exact = 2.0 * float(np.sum(np.log(r) ** 2 * r ** (-s)))
            assert fd2 == pytest.approx(exact, rel=1e-5)


class TestContinuousEnergy:
    def test_known_values(self):
        assert continuous_energy(2, -1.0) == pytest.approx(4.0 / 3.0, rel=1e-12)
        assert continuous_energy(2, -2.0) == pytest.approx(2.0, rel=1e-12)

    def test_s2_closed_form_identity(self):
        for s in [-3.0, -1.0, 0.5, 1.0]:
            assert continuous_energy(2, s) == pytest.approx(
                2.0 ** (1.0 - s) / (2.0 - s), rel=1e-12
            )

    def test_domain(self):
        with pytest.raises(ValueError):
            continuous_energy(2, 2.0)
        with pytest.raises(ValueError):
            continuous_energy(2, 0.0)

    def test_monte_carlo_consistency(self):
        # mean of f_s(|X - Y|) over independent uniform pairs equals the
        # continuous energy within 3 standard errors
        rng = np.random.default_rng(9)
        x = rng.standard_normal((1_000_000, 3))
        x /= np.linalg.norm(x, axis=1)[:, None]
        y = rng.standard_normal((1_000_000, 3))
        y /= np.linalg.norm(y, axis=1)[:, None]
        r = np.linalg.norm(x - y, axis=1)
        for s in [-2.0, -1.0, 1.0]:
            vals = r ** (-s)
            mean = vals.mean()
            se = vals.std(ddof=1) / math.sqrt(len(vals))
            assert abs(mean - continuous_energy(2, s)) <= 3.0 * se
