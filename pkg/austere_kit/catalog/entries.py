"""
Closed-form example submanifolds of CP^n
"""

import logging
from typing import Sequence, Tuple

import numpy as np

from ..core.cpn_core import real_inner
from ..core.errors import BadDimension
from ..core.immersion import SubmanifoldSpec
from ..core.symbolic_chart import SymbolicChart
from .registry import CatalogEntry, entry

logger = logging.getLogger(__name__)


def spec_from_chart(chart: SymbolicChart, label: str, box: Sequence[Tuple[float, float]]) -> SubmanifoldSpec:
    return SubmanifoldSpec(chart.k, chart.n, chart, np.array(box, dtype=float), label, chart.exact_jet)


def _vanishing_II(k: int):
    def analytic_II(u, nu):
        return np.zeros((k, k))
    return analytic_II


@entry("cp1_in_cp2", description="complex projective line in CP^2", suite=True, k=2, n=2)
def cp1_in_cp2() -> CatalogEntry:
    return linear_subspace(1, 2)


@entry("cp2_in_cp3", description="complex projective plane in CP^3", suite=False, k=4, n=3)
def cp2_in_cp3() -> CatalogEntry:
    return linear_subspace(2, 3)


def linear_subspace(k_complex: int, n: int) -> CatalogEntry:
    """CP^k_complex sitting in CP^n as the first k_complex + 1 homogeneous coordinates"""
    if not 1 <= k_complex <= n:
        raise BadDimension(f"Need 1 <= k_complex <= n, got k_complex={k_complex}, n={n}")
    k = 2 * k_complex
    components = ["1"]
    components += [f"u{2 * j - 1} + I*u{2 * j}" for j in range(1, k_complex + 1)]
    components += ["0"] * (n - k_complex)
    chart = SymbolicChart(components, k, normalize=True)
    label = f"cp{k_complex}_in_cp{n}"
    return CatalogEntry(
        label,
        spec_from_chart(chart, label, [(-1.0, 1.0)] * k),
        "austere",
        "complex submanifold; totally geodesic linear subspace",
        expected_branch="holomorphic" if k == 2 else None,
        analytic_II=_vanishing_II(k),
    )


@entry("rp2", description="real projective plane in CP^2", k=2, n=2)
def real_projective_plane() -> CatalogEntry:
    chart = SymbolicChart(["1", "u1", "u2"], 2, normalize=True)
    return CatalogEntry(
        "rp2",
        spec_from_chart(chart, "rp2", [(-1.0, 1.0)] * 2),
        "totally_geodesic",
        "real points of CP^2; totally geodesic Lagrangian surface",
        expected_branch="totally_geodesic",
        analytic_II=_vanishing_II(2),
    )


@entry("conic", description="holomorphic conic [1 : w : w^2] in CP^2", k=2, n=2)
def holomorphic_conic() -> CatalogEntry:
    chart = SymbolicChart(["1", "u1 + I*u2", "(u1 + I*u2)**2"], 2, normalize=True)
    return CatalogEntry(
        "conic",
        spec_from_chart(chart, "conic", [(-1.0, 1.0)] * 2),
        "holomorphic",
        "complex curve; minimal with J-invariant tangent planes",
        expected_branch="holomorphic",
    )


def _circle(a: float) -> SymbolicChart:
    return SymbolicChart(["cos(a)*cos(u1)", "cos(a)*sin(u1)", "sin(a)"], 1, normalize=False,
                         constants={"a": a})


def geodesic_and_circle(radius_param: float = 0.3) -> Tuple[CatalogEntry, CatalogEntry]:
    """Great circle and the circle at latitude ``radius_param`` on the real sphere in CP^2"""
    great = CatalogEntry(
        "great_circle",
        spec_from_chart(_circle(0.0), "great_circle", [(-1.0, 1.0)]),
        "geodesic",
        "geodesic of RP^2; a curve is austere exactly when it is a geodesic",
        analytic_II=_vanishing_II(1),
    )
    a = float(radius_param)
    tan_a = np.tan(a)

    def analytic_II(u, nu):
        t = float(np.asarray(u).reshape(-1)[0])
        pole = np.array([-np.sin(a) * np.cos(t), -np.sin(a) * np.sin(t), np.cos(a)], dtype=complex)
        return np.array([[tan_a * real_inner(pole, nu)]])

    small = CatalogEntry(
        "small_circle",
        spec_from_chart(_circle(a), "small_circle", [(-1.0, 1.0)]),
        "not_austere" if a != 0.0 else "geodesic",
        f"circle at latitude {a} on RP^2; geodesic curvature tan(a), so R_0 != 0 for a != 0",
        analytic_II=analytic_II,
    )
    return great, small


@entry("great_circle", description="geodesic circle in CP^2", k=1, n=2)
def great_circle() -> CatalogEntry:
    return geodesic_and_circle(0.0)[0]


@entry("small_circle", description="non-geodesic circle of latitude a in CP^2", k=1, n=2)
def small_circle(a: float = 0.3) -> CatalogEntry:
    return geodesic_and_circle(a)[1]


def torus_mean_curvature(radii: Sequence[float]) -> float:
    """Closed-form length of the mean curvature vector of the product torus with these radii"""
    x = np.square(np.asarray(radii, dtype=float))
    x = x / x.sum()
    return float(np.sqrt(np.sum(x * (3.0 - 1.0 / x) ** 2)))


@entry("torus", description="product torus (r0, r1 e^{iu1}, r2 e^{iu2}) with unequal radii", k=2, n=2)
def nonminimal_torus(radii: Sequence[float] = (2 ** -0.5, 0.5, 0.5)) -> CatalogEntry:
    """Lagrangian torus; minimal only for equal radii, which is kept out of the negative suite"""
    radii = np.asarray(radii, dtype=float)
    if radii.shape != (3,) or np.any(radii <= 0):
        raise BadDimension("Torus needs three positive radii")
    radii = radii / np.linalg.norm(radii)
    minimal = bool(np.allclose(radii, radii[0]))
    if minimal:
        logger.warning("Equal radii give the minimal torus; not a negative control")
    chart = SymbolicChart(["r0", "r1*exp(I*u1)", "r2*exp(I*u2)"], 2, normalize=False,
                          constants={"r0": radii[0], "r1": radii[1], "r2": radii[2]})
    return CatalogEntry(
        "torus",
        spec_from_chart(chart, "torus", [(-1.0, 1.0)] * 2),
        None if minimal else "not_austere",
        f"Lagrangian product torus, |mean curvature| = {torus_mean_curvature(radii):.12g}",
        expected_branch=None if minimal else "not_austere",
    )


@entry("torus_minimal", description="minimal product torus with equal radii", suite=False, k=2, n=2)
def minimal_torus() -> CatalogEntry:
    radii = np.full(3, 3 ** -0.5)
    chart = SymbolicChart(["r0", "r0*exp(I*u1)", "r0*exp(I*u2)"], 2, normalize=False, constants={"r0": radii[0]})
    return CatalogEntry(
        "torus_minimal",
        spec_from_chart(chart, "torus_minimal", [(-1.0, 1.0)] * 2),
        None,
        "minimal Lagrangian torus; outside the negative suite",
    )


__all__ = [
    "spec_from_chart",
    "linear_subspace",
    "real_projective_plane",
    "holomorphic_conic",
    "geodesic_and_circle",
    "nonminimal_torus",
    "minimal_torus",
    "torus_mean_curvature",
    "cp1_in_cp2",
    "cp2_in_cp3",
    "great_circle",
    "small_circle",
]
