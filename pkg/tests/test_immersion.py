"""
Tests for charts, jets, second fundamental forms and normal sampling
"""

from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from austere_kit.catalog import get_entry
from austere_kit.core.cpn_core import complete_adapted_frame, elementary, real_inner, realify
from austere_kit.core.errors import BadDimension, ImmersionFailure, NotNormal, OutOfDomain
from austere_kit.core.immersion import (
    LocalGeometry,
    SubmanifoldSpec,
    exact_jet,
    jet,
    kahler_angle,
    mean_curvature_norm,
    normal_basis,
    sample_normals,
    second_fundamental,
    sphere_directions,
    tangent_frame,
    tangent_split,
)

TAN_03 = 0.30933624960962325


def circle_spec() -> SubmanifoldSpec:
    return SubmanifoldSpec(1, 1, lambda u: np.array([np.cos(u[0]), np.sin(u[0])]), [[-1.0, 1.0]], "circle")


class TestJet:
    """Finite-difference and exact jets"""

    def test_great_circle_partials(self):
        """u -> (cos u, sin u) at 0 has partials (0, 1) and (-1, 0)"""
        result = jet(circle_spec(), [0.0], step=1e-4)
        assert_allclose(result.first[0], [0, 1], atol=1e-7)
        assert_allclose(result.second[0, 0], [-1, 0], atol=1e-7)

    def test_richardson_is_more_accurate(self):
        """Extrapolation beats the plain stencil at a coarse step"""
        plain = jet(circle_spec(), [0.3], step=1e-2)
        extrapolated = jet(circle_spec(), [0.3], step=1e-2, richardson=True)
        exact = np.array([-np.cos(0.3), -np.sin(0.3)])
        assert np.linalg.norm(extrapolated.second[0, 0] - exact) < np.linalg.norm(plain.second[0, 0] - exact)

    def test_linear_line_matches_closed_form(self, cp1):
        """Finite differences agree with the symbolic partials"""
        u = np.array([0.2, -0.4])
        approx = jet(cp1.spec, u)
        exact = exact_jet(cp1.spec, u)
        assert_allclose(approx.first, exact.first, atol=1e-7)
        assert_allclose(approx.second, exact.second, atol=1e-6)

    def test_stencil_leaving_domain(self):
        """A point on the boundary has no centered stencil"""
        with pytest.raises(OutOfDomain):
            jet(circle_spec(), [1.0])

    def test_constant_chart_is_not_immersed(self):
        """A zero derivative fails downstream"""
        spec = SubmanifoldSpec(1, 1, lambda u: np.array([1.0, 0.0]), [[-1.0, 1.0]], "constant")
        with pytest.raises(ImmersionFailure):
            LocalGeometry(spec, [0.0])

    def test_bad_dimension(self):
        """k and n must be positive"""
        with pytest.raises(BadDimension):
            SubmanifoldSpec(0, 1, lambda u: u, [], "empty")


@settings(max_examples=25, deadline=None)
@given(u1=st.floats(-0.8, 0.8), u2=st.floats(-0.8, 0.8))
def test_finite_difference_jet_tracks_exact_jet(cp1, u1, u2):
    """The central-difference jet stays within 1e-6 of the exact one"""
    approx = jet(cp1.spec, [u1, u2])
    exact = exact_jet(cp1.spec, [u1, u2])
    assert np.max(np.abs(approx.second - exact.second)) < 1e-6


class TestSecondFundamental:
    """Second fundamental form and Kahler angle on catalog entries"""

    def test_linear_line_is_totally_geodesic(self, cp1):
        """Every normal of CP^1 in CP^2 has H = 0"""
        geometry = LocalGeometry(cp1.spec, [0.3, 0.1])
        for nu in geometry.normal_basis:
            data, _ = geometry.second_fundamental(nu)
            assert_allclose(data.H, 0.0, atol=1e-6)
            assert data.theta == pytest.approx(np.pi / 2, abs=1e-6)

    def test_real_plane_is_lagrangian(self, rp2):
        """RP^2 has H = 0 and Kahler angle 0 for every normal"""
        geometry = LocalGeometry(rp2.spec, [-0.2, 0.5])
        for nu in geometry.normal_basis:
            data, _ = geometry.second_fundamental(nu)
            assert_allclose(data.H, 0.0, atol=1e-6)
            assert data.theta == pytest.approx(0.0, abs=1e-3)

    def test_conic_at_origin(self, conic):
        """[1 : w : w^2] at w = 0 has H = diag(2, -2) along E2 and [[0, 2], [2, 0]] along i E2"""
        real_normal = second_fundamental(conic.spec, [0.0, 0.0], elementary(2, 2))
        imaginary_normal = second_fundamental(conic.spec, [0.0, 0.0], 1j * elementary(2, 2))
        assert_allclose(real_normal.H, [[2.0, 0.0], [0.0, -2.0]], atol=1e-5)
        assert_allclose(imaginary_normal.H, [[0.0, 2.0], [2.0, 0.0]], atol=1e-5)
        assert abs(np.trace(real_normal.H)) < 1e-6
        assert abs(np.trace(imaginary_normal.H)) < 1e-6

    def test_conic_exact_jet(self, conic):
        """The exact jet gives the same form without stencil error"""
        data = second_fundamental(conic.spec, [0.0, 0.0], elementary(2, 2), analytic=True)
        assert_allclose(data.H, [[2.0, 0.0], [0.0, -2.0]], atol=1e-12)

    def test_tangent_vector_is_not_normal(self, rp2):
        """A tangent direction is rejected as a normal"""
        geometry = LocalGeometry(rp2.spec, [0.0, 0.0])
        with pytest.raises(NotNormal):
            geometry.second_fundamental(geometry.tangents[0])

    def test_geodesic_tangent_is_normalized_velocity(self, great_circle):
        """k = 1: e_1 is the unit horizontal velocity"""
        frame = tangent_frame(great_circle.spec, [0.0])
        assert_allclose(np.abs(frame.tangents[0]), [0.0, 1.0, 0.0], atol=1e-8)
        assert frame.orthogonality_error() < 1e-10


class TestTangentSplit:
    """J-invariant splitting of tangent and normal spaces"""

    def test_holomorphic_curve(self, conic):
        """A complex curve has rank_H = 2"""
        split = tangent_split(conic.spec, [0.1, -0.2])
        assert (split.rank_H, split.rank_D) == (2, 0)

    def test_real_plane(self, rp2):
        """RP^2 is totally real with no J-invariant normals"""
        split = tangent_split(rp2.spec, [0.1, 0.4])
        assert (split.rank_H, split.rank_D, split.rank_E, split.rank_N) == (0, 2, 2, 0)

    def test_geodesic(self, great_circle):
        """A curve has no J-invariant tangent part"""
        split = tangent_split(great_circle.spec, [0.2])
        assert (split.rank_H, split.rank_D, split.rank_E, split.rank_N) == (0, 1, 1, 2)

    def test_kahler_angle_of_complex_normal(self, conic):
        """J nu stays normal on a complex curve"""
        nu = normal_basis(conic.spec, [0.3, 0.3])[0]
        assert kahler_angle(conic.spec, [0.3, 0.3], nu) == pytest.approx(np.pi / 2, abs=1e-6)


class TestMeanCurvature:
    """Length of the mean curvature vector"""

    def test_small_circle(self, small_circle):
        """The latitude-0.3 circle has |H| = tan 0.3"""
        assert mean_curvature_norm(small_circle.spec, [0.1]) == pytest.approx(TAN_03, rel=1e-6)

    def test_torus(self, torus):
        """The default torus has |H| = 1 everywhere, with its non-horizontal lift"""
        for u in ([0.0, 0.0], [0.4, -0.3]):
            assert mean_curvature_norm(torus.spec, u) == pytest.approx(1.0, rel=1e-6)
            assert mean_curvature_norm(torus.spec, u, analytic=True) == pytest.approx(1.0, rel=1e-10)


class TestGauge:
    """Multiplying the lift by a phase changes nothing"""

    def test_constant_phase(self, small_circle):
        """II agrees for e^{i phi} chart(u) with the rotated normal"""
        rotated = small_circle.spec.with_phase(0.7)
        u = [0.25]
        base = LocalGeometry(small_circle.spec, u, analytic=True)
        moved = LocalGeometry(rotated, u, analytic=True)
        for nu in base.normal_basis:
            assert_allclose(moved.II(np.exp(0.7j) * nu), base.II(nu), atol=1e-10)
        assert moved.mean_curvature_norm() == pytest.approx(base.mean_curvature_norm(), abs=1e-10)


@lru_cache(maxsize=None)
def catalog_surface(name: str):
    return get_entry(name)


def bilinear_II(geometry: LocalGeometry, nu: np.ndarray, tangents: np.ndarray) -> np.ndarray:
    """II along nu on arbitrary tangent vectors, through their coordinates on the chart lifts"""
    lifts = np.column_stack([realify(x) for x in geometry.lifts])
    coords = np.linalg.lstsq(lifts, np.column_stack([realify(t) for t in tangents]), rcond=None)[0]
    return coords.T @ geometry.coordinate_II(nu) @ coords


@settings(max_examples=30, deadline=None)
@given(name=st.sampled_from(["rp2", "torus", "conic"]), seed=st.integers(0, 2 ** 32 - 1))
def test_second_fundamental_form_under_tangent_rotation(name, seed):
    """Rotating the tangent basis by O turns H into O^T H O and keeps its invariants"""
    rng = np.random.default_rng(seed)
    entry = catalog_surface(name)
    geometry = LocalGeometry(entry.spec, rng.uniform(-0.5, 0.5, size=2))
    nu = rng.standard_normal(len(geometry.normal_basis)) @ geometry.normal_basis
    nu = nu / np.linalg.norm(nu)
    data, _ = geometry.second_fundamental(nu)

    O, _ = np.linalg.qr(rng.standard_normal((2, 2)))
    rotated = O.T @ geometry.tangents
    frame = complete_adapted_frame(geometry.z, list(rotated), nu)
    assert_allclose(frame.tangents, rotated, atol=1e-12)

    H_rot = bilinear_II(geometry, nu, frame.tangents)
    assert_allclose(H_rot, O.T @ data.H @ O, atol=1e-8)
    assert_allclose(np.linalg.eigvalsh(H_rot), np.linalg.eigvalsh(data.H), atol=1e-8)
    assert np.trace(H_rot) == pytest.approx(np.trace(data.H), abs=1e-8)

    # cos(theta) is the length of the tangential part of J nu
    r = [real_inner(1j * nu, t) for t in frame.tangents]
    assert np.linalg.norm(r) == pytest.approx(np.cos(data.theta), abs=1e-10)


class TestNormalSampling:
    """Deterministic normal directions"""

    def test_sphere_directions_are_unit(self):
        """Every sphere dimension returns unit vectors"""
        for dim, count in ((1, 8), (2, 8), (3, 8), (5, 8)):
            points = sphere_directions(dim, count)
            assert_allclose(np.linalg.norm(points, axis=1), 1.0)

    def test_zero_sphere(self):
        """S^0 is the pair +-1"""
        assert_allclose(sphere_directions(1, 8), [[1.0], [-1.0]])

    def test_sample_normals(self, rp2, rng):
        """Samples are unit and normal"""
        geometry = LocalGeometry(rp2.spec, [0.0, 0.2])
        normals = sample_normals(geometry.normal_basis, 8, 4, rng)
        assert normals.shape == (12, 3)
        for nu in normals:
            geometry.check_normal(nu)

    def test_seeded_batch_is_reproducible(self, rp2):
        """The random batch depends only on the seed"""
        basis = normal_basis(rp2.spec, [0.0, 0.0])
        first = sample_normals(basis, 4, 4, np.random.default_rng(3))
        second = sample_normals(basis, 4, 4, np.random.default_rng(3))
        assert_allclose(first, second, atol=0)
