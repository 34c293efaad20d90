"""Closed-form density and overlap formulas: frozen oracles and identities."""

import numpy as np
import pytest
from scipy.integrate import dblquad

from ginibre_overlaps import specfun, theory
from ginibre_overlaps.errors import DomainError

# mpmath, 30 digits
DENS_GINUE_2_AT_1 = 0.234199326097276642760969073867      # 2 / (pi e)
OVL_GINUE_2_AT_1 = 0.3512989891459149641414536108         # 3 / (pi e)
OVL_GINUE_7_AT_0 = 2.22816920328653470076437268722        # 7 / pi
OVL_GINOE_2_AT_I = 0.14177076043298612174760543927
EDGE_AT_0 = 0.126987271868481939571526609869              # 1 / (pi sqrt(2 pi))
EDGE_AT_M2 = 1.27324181914156105896940751828
DEP_AT_1 = 0.385372881891806778612878512878
PREFAC_AT_1 = 1.21068461464402723661246716677
DENS_GINOE_50_2P2I = 0.301315172281353381188367649967
BULK_AT_HALF = 0.238732414637843003653325645059           # 0.75 / pi


class TestDensities:
    def test_ginue_examples(self):
        assert theory.density_ginue(10, 0j) == pytest.approx(1 / np.pi, rel=1e-14)
        assert theory.density_ginue(10, 100.0 + 0j) < 1e-300
        assert theory.density_ginue(2, 1.0 + 0j) == pytest.approx(DENS_GINUE_2_AT_1, rel=1e-13)

    def test_ginoe_complex_examples(self):
        assert theory.density_ginoe_complex(50, 3.0 + 0j) == 0.0
        assert theory.density_ginoe_complex(50, 40.0 + 2j) < 1e-280
        assert theory.density_ginoe_complex(50, 2 + 2j) == pytest.approx(
            DENS_GINOE_50_2P2I, rel=1e-13)

    def test_ginoe_vanishes_continuously_at_axis(self):
        ys = np.array([1e-12, 1e-8, 1e-4])
        vals = theory.density_ginoe_complex(50, 1.0 + 1j * ys)
        assert np.all(np.diff(vals) > 0)
        assert vals[0] < 1e-11

    def test_limits(self):
        assert theory.density_limit("bulk", w=0.3 + 0.4j) == pytest.approx(1 / np.pi)
        assert theory.density_limit("bulk", w=1.2) == 0.0
        assert theory.density_limit("edge", eta=0.0) == pytest.approx(1 / (2 * np.pi))
        dep = theory.density_limit("depletion", xi=10.0)
        assert dep == pytest.approx(1 / np.pi, rel=1e-2)
        with pytest.raises(DomainError):
            theory.density_limit("depletion", xi=1.0, kind=theory.GINUE)

    def test_symmetry(self):
        n = 40
        for z in (1.5 + 2j, -3 + 0.7j):
            a = theory.density_ginoe_complex(n, z)
            assert theory.density_ginoe_complex(n, z.conjugate()) == pytest.approx(a, abs=1e-14 * a)
            assert theory.density_ginoe_complex(n, -z.real + 1j * z.imag) == pytest.approx(
                a, abs=1e-14 * a)


class TestOverlapFiniteN:
    def test_ginue_examples(self):
        assert theory.overlap_ginue(7, 0j) == pytest.approx(OVL_GINUE_7_AT_0, rel=1e-14)
        assert theory.overlap_ginue(2, 1.0) == pytest.approx(OVL_GINUE_2_AT_1, rel=1e-13)
        deep_tail = theory.overlap_ginue(7, 20.0)
        assert 0.0 <= deep_tail < 1e-150  # zero to double precision, never negative

    def test_ginue_rotational_symmetry(self):
        vals = [theory.overlap_ginue(12, 2.0 * np.exp(1j * th))
                for th in np.linspace(0, 2 * np.pi, 9)]
        assert np.ptp(vals) <= 1e-15 * vals[0]

    def test_ginoe_examples(self):
        assert theory.overlap_ginoe(2, 1j) == pytest.approx(OVL_GINOE_2_AT_I, rel=1e-13)
        a = theory.overlap_ginoe(100, 3 + 3j)
        assert theory.overlap_ginoe(100, 3 - 3j) == pytest.approx(a, abs=1e-14 * a)
        assert theory.overlap_ginoe(100, -3 + 3j) == pytest.approx(a, abs=1e-14 * a)

    def test_ginoe_real_axis_rejected(self):
        with pytest.raises(DomainError):
            theory.overlap_ginoe(10, 1.5 + 0j)

    def test_prefactor_reconstruction(self):
        # the finite-N GinOE overlap factorizes into prefactor * GinUE-like bracket
        n, z = 9, 1.2 + 0.7j
        a = abs(z) ** 2
        bracket = (specfun.reg_gamma_q(n - 1, a) * (n - 1 - a)
                   + np.exp((n - 1) * np.log(a) - a - specfun.ln_gamma(n - 1)))
        expected = theory.overlap_prefactor_ginoe(abs(z.imag)) * bracket / np.pi
        assert theory.overlap_ginoe(n, z) == pytest.approx(expected, rel=1e-14)


class TestConditionalMean:
    def test_ginue_center(self):
        assert theory.conditional_mean(10, 0j, theory.GINUE) == pytest.approx(10.0, rel=1e-13)
        assert theory.conditional_mean(100, 0j, theory.GINUE) == pytest.approx(100.0, rel=1e-13)

    def test_outside_support(self):
        with pytest.raises(DomainError):
            theory.conditional_mean(10, 60.0 + 1j, theory.GINOE)

    def test_ginoe_axis_rejected(self):
        with pytest.raises(DomainError):
            theory.conditional_mean(10, 1.0 + 0j, theory.GINOE)


class TestLimits:
    def test_bulk(self):
        assert theory.overlap_limit_bulk(0j) == pytest.approx(1 / np.pi, rel=1e-15)
        assert theory.overlap_limit_bulk(1.2) == 0.0
        assert theory.overlap_limit_bulk(0.5j) == pytest.approx(BULK_AT_HALF, rel=1e-14)

    def test_edge(self):
        assert theory.overlap_limit_edge(0.0) == pytest.approx(EDGE_AT_0, rel=1e-14)
        assert theory.overlap_limit_edge(6.0) < 1e-15
        assert theory.overlap_limit_edge(-2.0) == pytest.approx(EDGE_AT_M2, rel=1e-13)
        # deep inside: ~ 2|eta|/pi
        assert theory.overlap_limit_edge(-40.0) == pytest.approx(80.0 / np.pi, rel=1e-3)

    def test_depletion(self):
        assert theory.overlap_limit_depletion(10.0) == pytest.approx(1 / np.pi, rel=1e-2)
        assert theory.overlap_limit_depletion(1.0, 0.0) == pytest.approx(DEP_AT_1, rel=1e-13)
        assert theory.overlap_limit_depletion(1.0, 1.5) == 0.0
        with pytest.raises(DomainError):
            theory.overlap_limit_depletion(0.0)

    def test_strip_factor(self):
        xi = 0.7
        origin = theory.overlap_limit_depletion(xi)
        assert theory.overlap_limit_depletion(xi, 0.6) == pytest.approx(
            origin * (1 - 0.36), rel=1e-14)


class TestGammaTailStep:
    def test_examples(self):
        assert theory.gamma_tail_step(50, 3, 0.0) == 1.0
        assert theory.gamma_tail_step(4000, 2, 0.5) == pytest.approx(1.0, abs=1e-6)
        assert theory.gamma_tail_step(4000, 2, 2.0) == pytest.approx(0.0, abs=1e-6)

    def test_bounded(self):
        x = np.linspace(0, 3, 31)
        v = theory.gamma_tail_step(200, 1, x)
        assert np.all((v >= 0) & (v <= 1))

    def test_domain(self):
        with pytest.raises(DomainError):
            theory.gamma_tail_step(3, 5, 0.5)


class TestAvgDetCharpoly:
    def test_mu0_value_example(self):
        assert theory.avg_det_charpoly(3, 1.0, 0.0) == pytest.approx(16.0, rel=1e-9)

    def test_mu0_identity_grid(self):
        for n in (1, 5, 20, 50):
            for az in (0.5, 2.0, 5.0):
                a = az * az
                ref = np.exp(a + specfun.ln_gamma(n + 1.0)) * specfun.reg_gamma_q(n + 1, a)
                assert theory.avg_det_charpoly(n, az, 0.0) == pytest.approx(ref, rel=1e-9)

    def test_positive_mu_against_polar_quadrature(self):
        n, z, mu = 5, 0.5 + 0.5j, 0.3
        a = abs(z) ** 2

        def f(th, r):
            return (r * np.exp(-r * r) / np.pi
                    * (mu + a + 2 * np.sqrt(mu) * r * np.cos(th) + r * r) ** n)

        ref, _ = dblquad(f, 0.0, 12.0, 0.0, 2 * np.pi, epsabs=1e-12, epsrel=1e-11)
        assert theory.avg_det_charpoly(n, z, mu) == pytest.approx(ref, rel=1e-8)

    def test_closed_forms_at_mu0(self):
        value, deriv = theory.avg_det_charpoly_mu0(8, 2.0)  # |z|^2 = 4
        assert value == pytest.approx(2154368.0, rel=1e-12)
        assert deriv == pytest.approx(8879616.0, rel=1e-12)
        assert theory.avg_det_charpoly_mu0(1, 0j) == (pytest.approx(1.0), pytest.approx(1.0))

    def test_mu_derivative_against_finite_difference(self):
        # one-sided Richardson inside mu >= 0 (the average is undefined at mu < 0)
        n, z = 4, 1 + 1j  # block size for a 6x6 matrix
        h = 1e-5
        f0 = theory.avg_det_charpoly(n, z, 0.0)
        d1 = (theory.avg_det_charpoly(n, z, h) - f0) / h
        d2 = (theory.avg_det_charpoly(n, z, h / 2) - f0) / (h / 2)
        fd = 2.0 * d2 - d1
        _, deriv = theory.avg_det_charpoly_mu0(n, z)
        assert fd == pytest.approx(deriv, rel=1e-6)

    def test_domain(self):
        with pytest.raises(DomainError):
            theory.avg_det_charpoly(0, 1.0)
        with pytest.raises(DomainError):
            theory.avg_det_charpoly(3, 1.0, -0.1)


class TestPrefactorIntegral:
    @pytest.mark.parametrize("y", [0.3, 0.5, 1.0, 2.5])
    def test_closed_equals_quadrature(self, y):
        closed = theory.overlap_prefactor_ginoe(y)
        quadr = theory.overlap_prefactor_ginoe(y, method="quadrature")
        assert quadr == pytest.approx(closed, rel=1e-10)

    def test_examples(self):
        assert theory.overlap_prefactor_ginoe(1.0) == pytest.approx(PREFAC_AT_1, rel=1e-13)
        assert theory.overlap_prefactor_ginoe(10.0) == pytest.approx(1.0, rel=1e-2)
        with pytest.raises(DomainError):
            theory.overlap_prefactor_ginoe(0.0)


class TestLargeNConsistency:
    """Spot checks of the scaling limits; the full grids run in the acceptance suite."""

    def test_bulk_spot(self):
        n = 4000
        w = 0.3 + 0.5j
        val = theory.overlap_ginoe(n, np.sqrt(n) * w) / n
        assert abs(val - theory.overlap_limit_bulk(w)) <= 0.02 / np.pi

    def test_edge_spot(self):
        n = 10**6
        eta = 0.5
        z = (np.sqrt(n) + eta) * 1j
        val = theory.overlap_ginoe(n, z) / np.sqrt(n)
        assert abs(val - theory.overlap_limit_edge(eta)) <= 0.01 * EDGE_AT_0

    def test_depletion_spot(self):
        n = 10**6
        xi = 0.5
        val = theory.overlap_ginoe(n, 1j * xi) / n
        assert val == pytest.approx(theory.overlap_limit_depletion(xi), rel=1e-2)

    def test_ginue_edge_theta_independence(self):
        # the formula depends on |z|^2 alone; the observable spread is set by
        # the n*eps rounding of exp(n log|z|^2 - ...), not by any theta term
        eta = -1.0
        for n, tol in ((250, 1e-12), (10**6, 1e-9)):
            vals = [theory.overlap_ginue(n, (np.sqrt(n) + eta) * np.exp(1j * th))
                    / np.sqrt(n) for th in (0.3, 1.1, 2.5)]
            assert np.ptp(vals) <= tol * abs(vals[0])
        assert vals[0] == pytest.approx(theory.overlap_limit_edge(eta), rel=1e-2)
