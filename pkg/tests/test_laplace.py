import math

import numpy as np
import pytest

from hcmlab.laplace import (InversionResult, branch_cut_invert, branch_cut_kernel,
                            bromwich_invert, closed_form_inverse_t1, invert_grid,
                            kernel_sign_change, kernel_total_integral, laplace_forward)
from hcmlab.quadrature import QuadratureSpec
from hcmlab.specfun import FamilyParams, f_family


class TestLaplaceForward:
    def test_constant(self):
        assert laplace_forward(lambda lam: 1.0, 2.0) == pytest.approx(0.5, abs=1e-10)

    def test_prop8_density_reproduces_f(self):
        # forward transform of e^{-lam a} sin(lam b)/b equals f_(1/3,1)
        alpha = 1.0 / 3.0
        g = lambda lam: closed_form_inverse_t1(lam, alpha)
        got = laplace_forward(g, 1.0)
        assert got == pytest.approx(1.0 / 3.0, abs=1e-9)

    def test_gamma_half(self):
        from hcmlab.densities import density_gamma
        got = laplace_forward(lambda lam: density_gamma(lam, 0.5), 3.0)
        assert got == pytest.approx(0.5, abs=1e-10)

    def test_domain(self):
        with pytest.raises(ValueError):
            laplace_forward(lambda lam: 1.0, 0.0)


class TestBromwich:
    def test_half_alpha_t_one(self):
        p = FamilyParams(0.5, 1.0)
        lam = 0.5 * math.pi
        assert bromwich_invert(p, lam) == pytest.approx(1.0, abs=1e-10)
        # explicit unit abscissa clears the imaginary-axis poles
        assert bromwich_invert(p, lam, c=1.0) == pytest.approx(1.0, abs=1e-9)

    def test_prototype_exponential(self):
        p = FamilyParams(0.5, 0.5)
        for lam in (0.2, 1.0, 5.0):
            assert bromwich_invert(p, lam) == pytest.approx(math.exp(-lam), abs=1e-11)

    def test_c_independence(self):
        p = FamilyParams(0.3, 0.65)
        a = bromwich_invert(p, 1.0, c=0.5)
        b = bromwich_invert(p, 1.0, c=2.0)
        assert abs(a - b) < 1e-6

    def test_pole_on_line_raises(self):
        with pytest.raises(ValueError):
            bromwich_invert(FamilyParams(0.8, 1.0), 1.0, c=0.5)

    def test_bad_lambda(self):
        with pytest.raises(ValueError):
            bromwich_invert(FamilyParams(0.3, 0.65), 0.0)

    @pytest.mark.parametrize("alpha", [0.2, 0.5, 0.8])
    def test_matches_closed_form_t1(self, alpha):
        p = FamilyParams(alpha, 1.0)
        for lam in (0.1, 1.7, 8.0, 20.0):
            exact = closed_form_inverse_t1(lam, alpha)
            got = bromwich_invert(p, lam)
            assert abs(got - exact) <= 1e-9 * max(1.0, abs(exact))

    def test_small_t_cross_route(self):
        # t below 1/2 exercises the integration-by-parts regularization
        p = FamilyParams(0.3, 0.2)
        for lam in (0.3, 2.0):
            a = bromwich_invert(p, lam)
            b = branch_cut_invert(lam, p)
            assert a == pytest.approx(b, abs=1e-8)


class TestBranchCutKernel:
    def test_im_part_identity(self):
        # Im(1/P(z)) = -2 Im(z) (cos(pi a) + Re z) / |P(z)|^2
        rng = np.random.default_rng(5)
        alpha = 0.27
        c = math.cos(math.pi * alpha)
        for _ in range(25):
            z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            P = z * z + 2.0 * c * z + 1.0
            lhs = (1.0 / P).imag
            rhs = -2.0 * z.imag * (c + z.real) / abs(P) ** 2
            assert lhs == pytest.approx(rhs, abs=1e-12, rel=1e-12)

    def test_single_sign_change(self):
        p = FamilyParams.from_eps(0.2, 0.1)
        x0 = kernel_sign_change(p)
        xs = np.geomspace(1e-3, 1e3, 800)
        signs = np.sign(branch_cut_kernel(xs, p))
        assert int(np.sum(np.diff(signs) != 0)) == 1
        assert branch_cut_kernel(0.5 * x0, p) < 0 < branch_cut_kernel(2.0 * x0, p)

    def test_sign_change_location(self):
        p = FamilyParams.from_eps(0.2, 0.1)
        x0 = kernel_sign_change(p)
        assert x0 ** p.t * math.cos(math.pi * p.t) == pytest.approx(-p.cos_pi_alpha, rel=1e-12)

    def test_no_sign_change_below_half(self):
        assert kernel_sign_change(FamilyParams(0.3, 0.4)) is None

    def test_vanishes_at_origin(self):
        p = FamilyParams.from_eps(0.2, 0.1)
        assert abs(branch_cut_kernel(1e-10, p)) < 1e-6

    def test_regime_guard(self):
        with pytest.raises(ValueError):
            branch_cut_kernel(1.0, FamilyParams(0.3, 0.8))


class TestBranchCutInvert:
    def test_agrees_with_bromwich(self):
        p = FamilyParams.from_eps(0.2, 0.1)
        for lam in (0.3, 1.0, 4.0):
            assert abs(branch_cut_invert(lam, p) - bromwich_invert(p, lam)) < 1e-6

    def test_lambda_zero_vanishes(self):
        p = FamilyParams.from_eps(0.2, 0.1)
        assert abs(branch_cut_invert(0.0, p)) < 1e-7

    def test_nonnegative_in_cm_region(self):
        p = FamilyParams.from_eps(0.3, 0.05)
        for lam in np.geomspace(1e-2, 1e2, 25):
            assert branch_cut_invert(lam, p) >= -1e-8


class TestKernelTotalIntegral:
    def test_fifth(self):
        assert abs(kernel_total_integral(FamilyParams.from_eps(0.2, 0.1))) < 1e-6

    def test_slow_decay(self):
        assert abs(kernel_total_integral(FamilyParams.from_eps(0.45, 0.02))) < 1e-5

    def test_alpha_zero_degenerate(self):
        assert abs(kernel_total_integral(FamilyParams(0.0, 0.7))) < 1e-6

    def test_divergence_guard(self):
        with pytest.raises(ValueError):
            kernel_total_integral(FamilyParams(0.2, 0.45))


class TestStressRegimes:
    def test_near_half_alpha_thin_margin(self):
        # alpha close to 1/2 with a thin eps: both routes still agree
        p = FamilyParams.from_eps(0.49, 0.005)
        for lam in (0.2, 1.0, 6.0):
            a = bromwich_invert(p, lam)
            b = branch_cut_invert(lam, p)
            assert a == pytest.approx(b, abs=2e-7)

    def test_slowest_tail_total_integral(self):
        # t barely above 1/2: the x^(-2t) tail decays at rate 0.06 in log-x
        p = FamilyParams(0.45, 0.53)
        assert abs(kernel_total_integral(p)) < 2e-5

    def test_tail_handoff_independent_of_cutoff(self):
        # the analytic tail must splice seamlessly onto the quadrature head
        p = FamilyParams.from_eps(0.2, 0.1)
        vals = [kernel_total_integral(p, head_upper=u) for u in (12.0, 20.0, 50.0)]
        assert max(vals) - min(vals) < 1e-9


class TestClosedFormT1:
    def test_negative_witness(self):
        assert closed_form_inverse_t1(1.5 * math.pi, 0.5) == pytest.approx(-1.0, rel=1e-13)

    def test_small_lambda_slope(self):
        lam = 1e-8
        assert closed_form_inverse_t1(lam, 0.3) / lam == pytest.approx(1.0, rel=1e-6)
        assert closed_form_inverse_t1(0.0, 0.3) == 0.0


class TestInvertGrid:
    def test_round_trip_through_forward(self):
        p = FamilyParams.from_eps(0.3, 0.05)
        spec = QuadratureSpec(abs_tol=1e-9, rel_tol=1e-9)
        for x in (0.5, 1.0, 2.0):
            got = laplace_forward(lambda lam: branch_cut_invert(lam, p, spec), x,
                                  QuadratureSpec(abs_tol=1e-8, rel_tol=1e-8))
            assert got == pytest.approx(f_family(x, p).real, abs=1e-5)

    def test_grid_result_fields(self):
        p = FamilyParams(0.3, 0.65)
        lams = np.geomspace(0.1, 5.0, 7)
        res = invert_grid(p, lams, method="bromwich")
        assert res.method == "bromwich"
        assert res.values.shape == lams.shape
        assert res.est_error < 1e-8

    def test_methods_agree(self):
        p = FamilyParams.from_eps(0.25, 0.05)
        lams = np.geomspace(0.1, 10.0, 5)
        a = invert_grid(p, lams, method="bromwich")
        b = invert_grid(p, lams, method="branch_cut")
        assert np.max(np.abs(a.values - b.values)) < 1e-6

    def test_closed_form_method_guard(self):
        with pytest.raises(ValueError):
            invert_grid(FamilyParams(0.3, 0.65), [1.0, 2.0], method="closed_form")

    def test_grid_must_increase(self):
        with pytest.raises(ValueError):
            InversionResult(np.array([1.0, 0.5]), np.array([0.0, 0.0]), "bromwich", 0.0)
