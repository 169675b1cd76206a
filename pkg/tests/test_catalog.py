"""
Tests for the catalog registry, its entries and symbolic charts
"""

import logging

import numpy as np
import pytest
from numpy.testing import assert_allclose

from austere_kit.catalog import (
    CatalogEntry,
    get_entry,
    linear_subspace,
    list_entries,
    suite_names,
    torus_mean_curvature,
)
from austere_kit.core.errors import BadDimension, ConfigError
from austere_kit.core.immersion import LocalGeometry, exact_jet, jet
from austere_kit.core.slag_check import AUSTERE, NOT_AUSTERE
from austere_kit.core.symbolic_chart import SymbolicChart


class TestRegistry:
    """Lookup by name"""

    def test_known_names(self):
        """Every closed-form entry is registered"""
        names = [info["name"] for info in list_entries()]
        assert names == sorted(names)
        assert {"cp1_in_cp2", "cp2_in_cp3", "rp2", "conic", "great_circle", "small_circle",
                "torus", "torus_minimal"} <= set(names)

    def test_suite_excludes_reference_entries(self):
        """The minimal torus and the four-dimensional entry stay out of the default suite"""
        names = suite_names()
        assert "torus_minimal" not in names
        assert "cp2_in_cp3" not in names
        assert "rp2" in names

    def test_info_lists_defaults(self):
        """Parameters with defaults are reported"""
        info = {entry["name"]: entry for entry in list_entries()}
        assert info["small_circle"]["parameters"] == {"a": 0.3}
        assert (info["small_circle"]["k"], info["small_circle"]["n"]) == (1, 2)
        assert info["rp2"]["description"]

    def test_unknown_entry(self):
        """Unknown names point at target.catalog"""
        with pytest.raises(ConfigError) as exc_info:
            get_entry("klein_bottle")
        assert exc_info.value.field == "target.catalog"

    def test_bad_parameter(self):
        """Unknown keyword arguments point at target.params"""
        with pytest.raises(ConfigError) as exc_info:
            get_entry("rp2", radius=2.0)
        assert exc_info.value.field == "target.params"


class TestEntries:
    """Entry construction and expected verdicts"""

    def test_expected_austerity(self, rp2, torus, conic):
        """Every positive label maps to austere_within_tol"""
        assert rp2.expected_austerity == AUSTERE
        assert conic.expected_austerity == AUSTERE
        assert torus.expected_austerity == NOT_AUSTERE

    def test_zero_latitude_is_geodesic(self):
        """small_circle(a=0) is a great circle"""
        entry = get_entry("small_circle", a=0.0)
        assert entry.expected_verdict == "geodesic"

    def test_equal_radii_warn(self, caplog):
        """Equal radii give the minimal torus and no expected verdict"""
        with caplog.at_level(logging.WARNING):
            entry = get_entry("torus", radii=(1.0, 1.0, 1.0))
        assert entry.expected_verdict is None
        assert "minimal torus" in caplog.text

    def test_bad_radii(self):
        """Radii must be three positive numbers"""
        with pytest.raises(BadDimension):
            get_entry("torus", radii=(1.0, -1.0, 1.0))

    def test_torus_mean_curvature(self):
        """Zero for equal radii, one for the default torus"""
        assert torus_mean_curvature((1.0, 1.0, 1.0)) == pytest.approx(0.0, abs=1e-12)
        assert torus_mean_curvature((2 ** -0.5, 0.5, 0.5)) == pytest.approx(1.0)

    def test_linear_subspace_dimensions(self):
        """CP^k sits in CP^n only for k <= n"""
        with pytest.raises(BadDimension):
            linear_subspace(3, 2)
        entry = get_entry("cp2_in_cp3")
        assert (entry.spec.k, entry.spec.n) == (4, 3)
        assert entry.expected_austerity == AUSTERE

    def test_unknown_verdict(self, rp2):
        """Expected verdicts come from a fixed vocabulary"""
        with pytest.raises(ValueError):
            CatalogEntry("bad", rp2.spec, "minimal", "")

    def test_charts_are_unit(self):
        """Every chart lands on the unit sphere"""
        for info in list_entries():
            entry = get_entry(info["name"])
            center = entry.spec.domain_box.mean(axis=1)
            assert np.linalg.norm(entry.spec.evaluate(center)) == pytest.approx(1.0)


class TestAnalyticForms:
    """Closed-form second fundamental forms against finite differences"""

    def test_small_circle(self, small_circle):
        """tan(a) <pole, nu> for every normal"""
        u = [0.2]
        geometry = LocalGeometry(small_circle.spec, u)
        for nu in geometry.normal_basis:
            assert_allclose(geometry.II(nu), small_circle.analytic_II(u, nu), atol=1e-6)

    def test_vanishing_forms(self, rp2, cp1):
        """Totally geodesic entries report zero"""
        for entry in (rp2, cp1):
            geometry = LocalGeometry(entry.spec, [0.1, 0.3])
            for nu in geometry.normal_basis:
                assert_allclose(geometry.II(nu), entry.analytic_II([0.1, 0.3], nu), atol=1e-6)

    def test_analytic_frame(self, conic):
        """The exact-jet frame is orthonormal and oriented"""
        geometry = LocalGeometry(conic.spec, [0.2, 0.1], analytic=True)
        frame = conic.analytic_frame([0.2, 0.1], geometry.normal_basis[0])
        assert conic.has_analytic_frame
        assert frame.orthogonality_error() < 1e-12
        assert np.linalg.det(frame.real_matrix()) == pytest.approx(1.0)


class TestSymbolicChart:
    """sympy-backed charts"""

    def test_normalized_value(self):
        """[1 : u1 : u2] is divided by its norm"""
        chart = SymbolicChart(["1", "u1", "u2"], 2)
        assert_allclose(chart(np.array([1.0, 1.0])), np.full(3, 3 ** -0.5))

    def test_exact_jet_matches_finite_differences(self, conic):
        """Symbolic partials agree with central differences"""
        u = [0.3, -0.2]
        assert_allclose(jet(conic.spec, u).first, exact_jet(conic.spec, u).first, atol=1e-7)

    def test_unknown_symbol(self):
        """Only u1..uk and I are allowed"""
        with pytest.raises(ValueError):
            SymbolicChart(["1", "x"], 1)

    def test_constants(self):
        """Named constants are substituted as floats"""
        chart = SymbolicChart(["c", "0"], 1, normalize=False, constants={"c": 1.0})
        assert_allclose(chart(np.array([0.5])), [1.0, 0.0])

    def test_polynomial_detection(self):
        """exp is not polynomial"""
        assert SymbolicChart(["1", "u1**2"], 1).is_polynomial()
        assert not SymbolicChart(["1", "exp(I*u1)"], 1).is_polynomial()
