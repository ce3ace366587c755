import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import kv, loggamma as scipy_loggamma

from hcmlab.specfun import (FamilyParams, bessel_k, f_family, f_family_prime,
                            log_gamma, p_alpha, pole_locations)


class TestFamilyParams:
    def test_eps(self):
        p = FamilyParams(0.2, 0.7)
        assert p.eps == pytest.approx(0.1)
        assert FamilyParams.from_eps(0.2, 0.1).t == pytest.approx(0.7)

    def test_eps_may_be_negative(self):
        assert FamilyParams(0.3, 0.9).eps == pytest.approx(-0.2)

    @pytest.mark.parametrize("alpha,t", [(-0.1, 0.5), (1.2, 0.5), (0.5, -1.0)])
    def test_validation(self, alpha, t):
        with pytest.raises(ValueError):
            FamilyParams(alpha, t)


class TestLogGamma:
    def test_at_one(self):
        assert abs(log_gamma(1.0)) < 1e-14

    def test_at_half(self):
        assert log_gamma(0.5).real == pytest.approx(math.log(math.sqrt(math.pi)), abs=1e-13)

    def test_at_five(self):
        assert log_gamma(5.0).real == pytest.approx(math.log(24.0), rel=1e-13)

    def test_pole_raises(self):
        for z in (0.0, -1.0, -7.0):
            with pytest.raises(ValueError):
                log_gamma(z)

    def test_against_reference_on_disk(self):
        rng = np.random.default_rng(7)
        zs = rng.uniform(-50, 50, 120) + 1j * rng.uniform(-50, 50, 120)
        zs = zs[np.abs(zs.imag) > 1e-8][:100]
        for z in zs:
            ref = scipy_loggamma(z)
            assert abs(log_gamma(z) - ref) <= 1e-12 * max(1.0, abs(ref))

    def test_recurrence_100_points(self):
        rng = np.random.default_rng(11)
        zs = rng.uniform(-20, 20, 100) + 1j * rng.uniform(0.05, 20, 100)
        for z in zs:
            lhs = np.exp(log_gamma(z + 1.0) - log_gamma(z))
            assert abs(lhs - z) <= 1e-11 * abs(z)


class TestBesselK:
    def test_half_order_closed_form(self):
        # K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}
        for x in (0.3, 1.0, 7.5):
            exact = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)
            assert bessel_k(0.5, x) == pytest.approx(exact, rel=1e-12)

    def test_k0_quadrature_oracle(self):
        # independent oracle: adaptive quadrature of the defining integral
        val, _ = quad(lambda y: math.exp(-math.cosh(y)), 0.0, 25.0,
                      epsabs=1e-14, epsrel=1e-13, limit=300)
        assert bessel_k(0.0, 1.0) == pytest.approx(val, rel=1e-11)
        assert bessel_k(0.0, 1.0) == pytest.approx(0.4210244382, abs=1e-10)

    def test_even_in_order(self):
        for nu in (1.0 / 3.0, 1.7, 5.0):
            for x in (0.01, 2.0, 30.0):
                a, b = bessel_k(nu, x), bessel_k(-nu, x)
                assert abs(a - b) <= 1e-12 * abs(a)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            bessel_k(0.5, 0.0)
        with pytest.raises(ValueError):
            bessel_k(0.5, -1.0)

    def test_against_scipy_grid(self):
        for nu in (-5.0, -1.5, 0.0, 0.25, 1.0 / 3.0, 2.0, 5.0):
            for x in (1e-3, 0.05, 1.0, 10.0, 50.0):
                ref = kv(nu, x)
                assert bessel_k(nu, x) == pytest.approx(ref, rel=1e-10)


class TestPAlpha:
    def test_root(self):
        z = np.exp(1j * (1.0 - 1.0 / 3.0) * math.pi)
        assert abs(p_alpha(z, 1.0 / 3.0)) < 1e-14

    def test_at_zero(self):
        assert p_alpha(0.0, 0.77) == pytest.approx(1.0)

    def test_at_one_half_alpha(self):
        assert p_alpha(1.0, 0.5) == pytest.approx(2.0, abs=1e-15)


class TestFFamily:
    def test_prototype_value(self):
        assert f_family(4.0, FamilyParams(0.5, 0.5)) == pytest.approx(0.2)

    def test_one_third_value(self):
        # 1/(1 + 2 cos(pi/3) + 1) = 1/3
        assert f_family(1.0, FamilyParams(1.0 / 3.0, 2.0 / 3.0)) == pytest.approx(1.0 / 3.0)

    def test_alpha_zero_limit(self):
        p = FamilyParams(0.0, 1.0)
        for x in (0.2, 1.0, 9.0):
            assert f_family(x, p).real == pytest.approx(1.0 / (x + 1.0) ** 2, rel=1e-14)

    def test_pole_error(self):
        with pytest.raises(ZeroDivisionError):
            f_family(1j, FamilyParams(0.5, 1.0))

    def test_conjugate_symmetry(self):
        p = FamilyParams(0.27, 0.6)
        rng = np.random.default_rng(3)
        zs = rng.uniform(-5, 5, 40) + 1j * rng.uniform(1e-3, 5, 40)
        for z in zs:
            assert f_family(np.conj(z), p) == pytest.approx(np.conj(f_family(z, p)), rel=1e-13)

    @pytest.mark.parametrize("t", [0.3, 0.65, 1.0])
    def test_decay_rate_on_rays(self, t):
        p = FamilyParams(0.3, t)
        for theta in (0.0, 0.5 * math.pi, -0.5 * math.pi, 0.75 * math.pi, -0.75 * math.pi):
            for r in (1e3, 1e4):
                z = r * np.exp(1j * theta)
                ratio = abs(z) ** (2.0 * t) * abs(f_family(z, p))
                assert 0.5 <= ratio <= 2.0

    def test_limit_one_at_origin(self):
        p = FamilyParams(0.3, 0.6)
        for theta in (0.0, 0.9 * math.pi, -0.5 * math.pi):
            z = 1e-9 * np.exp(1j * theta)
            assert abs(f_family(z, p) - 1.0) < 1e-5

    def test_derivative_matches_finite_differences(self):
        p = FamilyParams(0.35, 0.55)
        for z in (0.7 + 0.4j, 2.0 + 1e-3j, -1.5 + 2.2j):
            h = 1e-6
            num = (f_family(z + h, p) - f_family(z - h, p)) / (2.0 * h)
            assert f_family_prime(z, p) == pytest.approx(num, rel=1e-7)


class TestPoleLocations:
    def test_no_poles_inside(self):
        assert pole_locations(FamilyParams(0.5, 0.5)) == []

    def test_boundary_is_pole_free(self):
        assert pole_locations(FamilyParams(1.0 / 3.0, 2.0 / 3.0)) == []

    def test_half_alpha_t_one(self):
        poles = pole_locations(FamilyParams(0.5, 1.0))
        got = sorted(poles, key=lambda z: z.imag)
        assert got[1] == pytest.approx(1j, abs=1e-12)
        assert got[0] == pytest.approx(-1j, abs=1e-12)

    def test_poles_annihilate_f(self):
        p = FamilyParams(0.3, 0.8)
        for z in pole_locations(p):
            # approach the pole: |f| blows up
            assert abs(f_family(z * (1.0 + 1e-6), p)) > 1e4
