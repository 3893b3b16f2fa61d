import math

import numpy as np
import pytest

from sphereqmc import (
    SobolevOrder,
    alpha_coefficients,
    continuous_energy,
    elliptic_subleading_coefficient,
    expected_energy_elliptic,
    expected_energy_spherical,
    expected_log_energy_elliptic,
    expected_wce2_harmonic_quadrature,
    expected_wce2_spherical,
    proposition7_lhs,
    proposition7_limit,
    zeta,
)
from sphereqmc.closedforms import ExpectedValue
from sphereqmc.specfun import log_gamma


class TestExpectedValueType:
    def test_exact_carries_no_error_term(self):
        with pytest.raises(ValueError):
            ExpectedValue(value=1.0, kind="exact", error_term="o(1)")
        with pytest.raises(ValueError):
            ExpectedValue(value=1.0, kind="asymptotic")


class TestSphericalEnergy:
    def test_s_minus_two_simplification(self):
        for n in [2, 7, 50]:
            want = 2.0 * n * n - 4.0 * n / (n + 1.0)
            assert expected_energy_spherical(n, -2.0).value == pytest.approx(want, rel=1e-12)

    def test_single_point_is_zero(self):
        assert expected_energy_spherical(1, 1.0).value == pytest.approx(0.0, abs=1e-12)

    def test_domain(self):
        for bad in [0.0, 2.0, 4.0, 5.5]:
            with pytest.raises(ValueError):
                expected_energy_spherical(10, bad)

    def test_kind(self):
        assert expected_energy_spherical(10, 1.0).kind == "exact"


class TestSphericalWce:
    def test_s_three_halves_closed_form(self):
        for n in [2, 10, 100]:
            want = math.sqrt(math.pi) * math.exp(log_gamma(float(n)) - log_gamma(n + 1.5))
            assert expected_wce2_spherical(n, 1.5).value == pytest.approx(want, rel=1e-12)

    def test_large_n_limit(self):
        s = 1.5
        n = 10 ** 4
        scaled = n ** s * expected_wce2_spherical(n, s).value
        limit = 2.0 ** (2 * s) * math.exp(log_gamma(s)) / 4.0
        assert abs(scaled / limit - 1.0) < 1e-3

    def test_consistency_with_energy_formula(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            n = int(rng.integers(2, 500))
            s = float(rng.uniform(1.01, 1.99))
            lhs = expected_wce2_spherical(n, s).value
            e = expected_energy_spherical(n, 2.0 - 2.0 * s).value
            v = continuous_energy(2, 2.0 - 2.0 * s)
            rhs = -(e - v * n * n) / (n * n)
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            expected_wce2_spherical(10, 1.0)
        with pytest.raises(ValueError):
            expected_wce2_spherical(10, 2.0)


class TestEllipticEnergy:
    def test_special_case_s_minus_two(self):
        ev = expected_energy_elliptic(32, -2.0)
        assert ev.value == pytest.approx(2.0 * 32 ** 2 - 8.0 * zeta(3.0) / 32.0, rel=1e-13)
        assert ev.kind == "asymptotic"
        assert ev.error_term == "o(1/N)"

    def test_s_minus_four_two_terms(self):
        ev = expected_energy_elliptic(10, -4.0)
        want = 32.0 / 6.0 * 100.0 + 64.0 * zeta(3.0) / 10.0
        assert ev.value == pytest.approx(want, rel=1e-12)

    def test_subleading_coefficient_value(self):
        # C(-4) = 2^4 * (-2) * (-1) * Gamma(3) * zeta(3) = 64 zeta(3)
        assert elliptic_subleading_coefficient(-4.0) == pytest.approx(
            64.0 * zeta(3.0), rel=1e-12
        )

    def test_log_case_routed(self):
        ev = expected_energy_elliptic(2, 0.0)
        assert ev.kind == "exact"
        assert ev.value == pytest.approx(1.0 - 3.0 * math.log(2.0), rel=1e-12)

    def test_unsupported_zeta_arguments(self):
        with pytest.raises(ValueError, match="zeta|supports s < 0"):
            expected_energy_elliptic(10, 1.0)
        with pytest.raises(ValueError):
            expected_energy_elliptic(10, 3.0)

    def test_domain(self):
        with pytest.raises(ValueError):
            expected_energy_elliptic(10, 4.5)
        with pytest.raises(ValueError):
            expected_energy_elliptic(10, 2.0)


class TestEllipticLogEnergy:
    def test_single_point(self):
        assert expected_log_energy_elliptic(1).value == pytest.approx(0.0, abs=1e-14)

    def test_two_points(self):
        assert expected_log_energy_elliptic(2).value == pytest.approx(
            1.0 - 3.0 * math.log(2.0), rel=1e-13
        )


class TestHarmonicQuadrature:
    def test_degree_zero_matches_single_uniform_point(self):
        # L = 0 is one uniform point: E[wce^2] = V_{2-2s}
        for s in [1.2, 1.5, 1.9]:
            got = expected_wce2_harmonic_quadrature(2, 0, s).value
            assert got == pytest.approx(continuous_energy(2, 2.0 - 2.0 * s), rel=1e-12)

    def test_node_doubling_stability(self):
        base = 4 * 8 + 64
        a = expected_wce2_harmonic_quadrature(2, 8, 1.5, n_nodes=base).value
        b = expected_wce2_harmonic_quadrature(2, 8, 1.5, n_nodes=2 * base).value
        assert abs(a - b) <= 1e-10 * abs(a)

    def test_scaled_values_approach_a_constant(self):
        # L^(2s) E[wce^2] has a finite limit for d/2 < s < (d+1)/2
        s = 1.1
        v64 = 64.0 ** (2 * s) * expected_wce2_harmonic_quadrature(2, 64, s).value
        v128 = 128.0 ** (2 * s) * expected_wce2_harmonic_quadrature(2, 128, s).value
        assert abs(v64 / v128 - 1.0) <= 0.02

    def test_domain(self):
        with pytest.raises(ValueError):
            expected_wce2_harmonic_quadrature(2, 8, 2.5)


class TestProposition7:
    def test_limit_matches_closed_form(self):
        # Weber-Schafheitlin: int_0^inf J_nu(t)^2 t^(-1-a) dt =
        #   Gamma(1+a) Gamma(nu - a/2) / (2^(1+a) Gamma(1+a/2)^2 Gamma(nu+1+a/2))
        for d in [2, 3]:
            nu = 1.0 + (d - 2.0) / 2.0
            for a in [-0.9, -0.5, 0.5, 1.0, d - 0.2]:
                closed = 2.0 ** (a / 2.0 + d) * math.exp(
                    log_gamma(1.0 + a)
                    - (1.0 + a) * math.log(2.0)
                    - 2.0 * log_gamma(1.0 + a / 2.0)
                    + log_gamma(nu - a / 2.0)
                    - log_gamma(nu + 1.0 + a / 2.0)
                )
                assert proposition7_limit(d, a) == pytest.approx(closed, rel=1e-4)

    def test_lhs_approaches_limit(self):
        # at a = -0.5 convergence is O(L^(-1/2)); check the gap shrinks
        rhs = proposition7_limit(2, -0.5)
        gaps = [abs(proposition7_lhs(2, -0.5, L) - rhs) / rhs for L in [100, 400, 1600]]
        assert gaps[1] < gaps[0] and gaps[2] < gaps[1]
        assert gaps[2] < 0.01

    def test_lhs_close_at_moderate_degree_for_positive_a(self):
        for a in [0.5, 1.0]:
            rhs = proposition7_limit(2, a)
            lhs = proposition7_lhs(2, a, 200)
            assert abs(lhs - rhs) / rhs < 0.02

    def test_blowup_toward_upper_endpoint(self):
        assert proposition7_limit(2, 1.99) > proposition7_limit(2, 1.5)

    def test_domain(self):
        with pytest.raises(ValueError):
            proposition7_limit(2, -1.0)
        with pytest.raises(ValueError):
            proposition7_limit(2, 2.0)
        with pytest.raises(ValueError):
            proposition7_lhs(2, 2.5, 100)


class TestSaturationLaws:
    def test_spherical_plateau(self):
        # N^2 E[wce^2] -> -12 alpha_1 for orders in the saturated band
        s = 2.75
        so = SobolevOrder(d=2, s=s)
        a1 = alpha_coefficients(so, 1)[0]
        target = -12.0 * a1
        assert target > 0.0
        for n in [10 ** 3, 10 ** 4]:
            e_m2 = expected_energy_spherical(n, -2.0).value
            e_s = expected_energy_spherical(n, 2.0 - 2.0 * s).value
            v = continuous_energy(2, 2.0 - 2.0 * s)
            val = 3.0 * a1 * (e_m2 - 2.0 * n * n) + e_s - v * n * n
            assert abs(val - target) / target < 0.01

    def test_elliptic_plateau(self):
        # N^3 E[wce^2] -> -360 zeta(3) alpha_2 using the two-term energy laws
        s = 3.5
        n = 10 ** 4
        so = SobolevOrder(d=2, s=s)
        a2 = alpha_coefficients(so, 2)[1]
        z3 = zeta(3.0)
        e_m2 = 2.0 * n * n - 8.0 * z3 / n
        e_m4 = 32.0 / 6.0 * n * n + 64.0 * z3 / n
        c_term = elliptic_subleading_coefficient(2.0 - 2.0 * s) * n ** (2.0 - s)
        wce2 = (-5.0 * a2 * (2.0 * n * n - 3.0 * e_m2 + 0.75 * e_m4) - c_term) / (n * n)
        target = -360.0 * z3 * a2
        assert target > 0.0
        assert abs(n ** 3 * wce2 - target) / target < 0.02
