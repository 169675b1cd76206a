"""
Tests for the Stenzel form and the normal-bundle embedding
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from austere_kit.core.cpn_core import elementary
from austere_kit.core.errors import ChartSingular, DimensionMismatch, NotInB, TauOutOfRange, ZeroVector
from austere_kit.core.stenzel_metric import (
    AffinePoint,
    affine_chart,
    closedness_defect,
    exhaustion,
    kahler_matrix,
    kahler_pair,
    metric_pair,
    phi_hat,
    standard_point,
    stenzel_form_general,
    stenzel_form_standard,
    tau_of,
)


def random_normal_pair(rng: np.random.Generator, n: int, mu: float):
    """Random zeta with a xi orthogonal to it and |xi| = mu |zeta|"""
    zeta = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    v = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    xi = v - np.vdot(zeta, v) / np.vdot(zeta, zeta) * zeta
    return zeta, mu * np.linalg.norm(zeta) * xi / np.linalg.norm(xi)


def random_affine_point(rng: np.random.Generator, n: int) -> AffinePoint:
    Z = 0.3 * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    W = 0.3 * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    return AffinePoint(Z, W)


class TestPhiHat:
    """Embedding of the normal bundle"""

    def test_zero_section(self):
        """xi = 0 maps E0 to (E0; E0)"""
        first, second = phi_hat(elementary(2, 0), np.zeros(3))
        assert_allclose(first, [1, 0, 0])
        assert_allclose(second, [1, 0, 0])

    def test_standard_fiber(self):
        """xi = i t E2 lands on the standard point with tau = tanh t"""
        t = 0.4
        first, second = phi_hat(elementary(2, 0), 1j * t * elementary(2, 2))
        assert_allclose(first, [np.cosh(t), 0, -np.sinh(t)], atol=1e-15)
        assert_allclose(second, [np.cosh(t), 0, np.sinh(t)], atol=1e-15)
        point = affine_chart((first, second))
        expected = standard_point(tau_of(t), 2)
        assert_allclose(point.Z, expected.Z, atol=1e-15)
        assert_allclose(point.W, expected.W, atol=1e-15)

    def test_tiny_fiber_uses_series(self):
        """Below the series cutoff sinh(mu)/mu is replaced by its expansion"""
        first, _ = phi_hat(elementary(1, 0), 1e-10j * elementary(1, 1))
        assert_allclose(first, [1.0, -1e-10], atol=1e-20)

    def test_non_normal_xi(self):
        """xi must satisfy xi . conj(zeta) = 0"""
        with pytest.raises(NotInB):
            phi_hat(elementary(2, 0), elementary(2, 0))

    def test_zero_zeta(self):
        """zeta = 0 is not a point"""
        with pytest.raises(ZeroVector):
            phi_hat(np.zeros(3), np.zeros(3))

    def test_length_mismatch(self):
        """zeta and xi live in the same C^(n+1)"""
        with pytest.raises(DimensionMismatch):
            phi_hat(elementary(2, 0), np.zeros(2))

    def test_homogeneity(self, rng):
        """(lambda zeta, lambda xi) scales the pair by (lambda, conj(lambda)) and keeps the point"""
        lam = 2.0 * np.exp(1j * np.pi / 3)
        for n in (1, 2, 3):
            zeta, xi = random_normal_pair(rng, n, mu=rng.uniform(0.0, 5.0))
            first, second = phi_hat(zeta, xi)
            scaled_first, scaled_second = phi_hat(lam * zeta, lam * xi)
            assert_allclose(scaled_first, lam * first, rtol=1e-12, atol=1e-12)
            assert_allclose(scaled_second, np.conj(lam) * second, rtol=1e-12, atol=1e-12)
            point = affine_chart((first, second))
            scaled = affine_chart((scaled_first, scaled_second))
            assert_allclose(scaled.Z, point.Z, rtol=1e-10, atol=1e-10)
            assert_allclose(scaled.W, point.W, rtol=1e-10, atol=1e-10)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_image_lies_off_the_quadric(self, n, rng):
        """z . w = |zeta|^2 on the image, so B never vanishes for mu <= 5"""
        for _ in range(200):
            zeta, xi = random_normal_pair(rng, n, mu=rng.uniform(0.0, 5.0))
            first, second = phi_hat(zeta, xi)
            assert first @ second == pytest.approx(np.vdot(zeta, zeta).real, rel=1e-9)
            data = exhaustion(affine_chart((first, second)))
            assert abs(data.B) > 0
            assert data.Ncal >= 1.0 - 1e-10

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_zero_section_is_conjugate(self, n, rng):
        """xi = 0 gives W = conj(Z) at random zeta"""
        for _ in range(100):
            zeta = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
            point = affine_chart(phi_hat(zeta, np.zeros(n + 1)))
            assert_allclose(point.W, np.conj(point.Z), atol=1e-12)


class TestAffineChart:
    """The gauge z_0 = w_0 = 1"""

    def test_divides_by_leading_coordinate(self):
        """(2, 4; 1, 3) becomes Z = (2,), W = (3,)"""
        point = affine_chart(([2, 4], [1, 3]))
        assert_allclose(point.Z, [2])
        assert_allclose(point.W, [3])

    def test_vanishing_leading_coordinate(self):
        """z_0 = 0 has no affine image"""
        with pytest.raises(ChartSingular):
            affine_chart(([0, 1], [1, 0]))

    def test_point_on_quadric(self):
        """1 + Z.W = 0 is excluded"""
        with pytest.raises(ChartSingular):
            AffinePoint(np.array([1.0]), np.array([-1.0]))


class TestExhaustion:
    """A, B and N"""

    def test_origin(self):
        """At Z = W = 0 everything is 1"""
        data = exhaustion(AffinePoint(np.zeros(2), np.zeros(2)))
        assert (data.A, data.B, data.Ncal) == (1.0, 1.0, 1.0)

    def test_standard_point(self):
        """A = (1 + tau^2)^2, B = 1 - tau^2"""
        tau = 0.5
        data = exhaustion(standard_point(tau, 3))
        assert data.A == pytest.approx((1 + tau ** 2) ** 2)
        assert data.B == pytest.approx(1 - tau ** 2)
        assert data.Ncal == pytest.approx(((1 + tau ** 2) / (1 - tau ** 2)) ** 2)


class TestStenzelForm:
    """General and closed-form coefficient matrices"""

    def test_origin_is_identity(self):
        """G = I at the zero section"""
        assert_allclose(stenzel_form_general(standard_point(0.0, 2)).G, np.eye(4), atol=1e-15)
        assert_allclose(stenzel_form_standard(0.0, 2).G, np.eye(4), atol=1e-15)

    def test_half_tau_values(self):
        """tau = 0.5: 4/3 on the generic diagonal, 2.0148148 and -0.9481481 in the last block"""
        G = stenzel_form_standard(0.5, 2).G.real
        assert G[0, 0] == pytest.approx(4 / 3)
        assert G[2, 2] == pytest.approx(4 / 3)
        assert G[1, 1] == pytest.approx(2.0148148148, abs=1e-9)
        assert G[3, 3] == pytest.approx(2.0148148148, abs=1e-9)
        assert G[1, 3] == pytest.approx(-0.9481481481, abs=1e-9)
        assert G[0, 2] == 0.0

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    @pytest.mark.parametrize("tau", [0.0, 0.3, 0.5, 0.9])
    def test_general_matches_closed_form(self, n, tau):
        """Both routes agree at the standard point"""
        general = stenzel_form_general(standard_point(tau, n)).G
        closed = stenzel_form_standard(tau, n).G
        assert_allclose(general, closed, atol=1e-10)

    def test_near_the_cap(self):
        """tau = 0.99 still agrees in relative terms"""
        general = stenzel_form_general(standard_point(0.99, 2)).G
        closed = stenzel_form_standard(0.99, 2).G
        assert_allclose(general, closed, rtol=1e-9, atol=1e-9)

    @pytest.mark.parametrize("tau", [-0.1, 1.0, 1.5])
    def test_tau_out_of_range(self, tau):
        """tau must lie in [0, 1)"""
        with pytest.raises(TauOutOfRange):
            stenzel_form_standard(tau, 2)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_hermitian_positive_definite(self, n, rng):
        """G is hermitian and positive definite at a thousand random points"""
        for _ in range(1000):
            form = stenzel_form_general(random_affine_point(rng, n))
            assert form.hermiticity_error() < 1e-10
            assert form.min_eigenvalue() > 0

    @pytest.mark.parametrize("n", [1, 2])
    def test_closedness(self, n, rng):
        """The form with coefficients G is closed at ten random points"""
        for _ in range(10):
            assert closedness_defect(random_affine_point(rng, n)) < 1e-5


@settings(max_examples=30, deadline=None)
@given(tau=st.floats(0.0, 0.95), n=st.integers(1, 4))
def test_standard_form_is_real_and_positive(tau, n):
    """At the standard point G is real symmetric and positive definite"""
    form = stenzel_form_standard(tau, n)
    assert np.max(np.abs(form.G.imag)) == 0.0
    assert form.hermiticity_error() == 0.0
    assert form.min_eigenvalue() > 0


class TestPairings:
    """Metric and Kahler pairings at the standard point"""

    def setup_method(self):
        self.G = stenzel_form_standard(0.5, 2)

    @staticmethod
    def vertical(a):
        return np.concatenate([a, -np.conj(a)])

    @staticmethod
    def horizontal(a):
        return np.concatenate([a, np.conj(a)])

    def test_vertical_and_horizontal_are_orthogonal(self, rng):
        """(a; -conj a) and (b; conj b) have g = 0"""
        for _ in range(5):
            a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            assert metric_pair(self.G, self.vertical(a), self.horizontal(b)) == pytest.approx(0.0, abs=1e-12)

    def test_vertical_space_is_isotropic(self, rng):
        """Omega vanishes on pairs of vertical vectors and on pairs of horizontal vectors"""
        a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        assert kahler_pair(self.G, self.vertical(a), self.vertical(b)) == pytest.approx(0.0, abs=1e-12)
        assert kahler_pair(self.G, self.horizontal(a), self.horizontal(b)) == pytest.approx(0.0, abs=1e-12)

    def test_metric_is_positive(self, rng):
        """g(v, v) > 0 for v != 0"""
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        assert metric_pair(self.G, v, v) > 0

    def test_kahler_matrix_is_antisymmetric(self, rng):
        """Omega(v, w) = -Omega(w, v) and matches the pairwise call"""
        rows = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
        omega = kahler_matrix(self.G, rows)
        assert_allclose(omega, -omega.T, atol=1e-12)
        assert omega[0, 2] == pytest.approx(kahler_pair(self.G, rows[0], rows[2]))

    def test_compatible_with_complex_structure(self, rng):
        """Omega(v, w) = g(v, i w)"""
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        w = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        assert kahler_pair(self.G, v, w) == pytest.approx(metric_pair(self.G, v, 1j * w))

    def test_length_mismatch(self):
        """Vectors must have 2n entries"""
        with pytest.raises(DimensionMismatch):
            metric_pair(self.G, np.ones(3), np.ones(4))
