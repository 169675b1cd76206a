"""
Submanifolds of CP^n given by lift charts into S^(2n+1)

Everything here is computed from the jet (value, first and second partials) of a chart,
either by central finite differences or exactly when the chart provides an exact jet.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from .cpn_core import (
    DEFAULTS,
    AdaptedFrame,
    UnitHopfPoint,
    complete_adapted_frame,
    complexify,
    gram_schmidt,
    horizontal_defect,
    horizontal_project,
    householder_complement,
    normalize,
    real_inner,
    realify,
)
from .errors import BadDimension, ImmersionFailure, NotHorizontal, NotNormal, NotUnit, OutOfDomain, RankAmbiguous

logger = logging.getLogger(__name__)

Chart = Callable[[np.ndarray], np.ndarray]
ExactJet = Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class SubmanifoldSpec:
    """A k-dimensional submanifold of CP^n through one lift chart

    ``chart`` maps a point of ``domain_box`` (shape (k, 2), rows of [low, high]) to a unit
    vector of C^(n+1). ``exact_jet``, when present, returns the exact value and partials.
    """

    k: int
    n: int
    chart: Chart
    domain_box: np.ndarray
    label: str
    exact_jet: Optional[ExactJet] = field(default=None, compare=False)

    def __post_init__(self):
        if self.k < 1 or self.n < 1:
            raise BadDimension(f"{self.label}: need k >= 1 and n >= 1, got k={self.k}, n={self.n}")
        box = np.asarray(self.domain_box, dtype=float).reshape(self.k, 2)
        object.__setattr__(self, "domain_box", box)

    def contains(self, u: np.ndarray, margin: float = 0.0) -> bool:
        u = np.asarray(u, dtype=float)
        return bool(np.all(u - margin >= self.domain_box[:, 0]) and np.all(u + margin <= self.domain_box[:, 1]))

    def evaluate(self, u: np.ndarray) -> np.ndarray:
        value = np.asarray(self.chart(np.asarray(u, dtype=float)), dtype=complex).reshape(-1)
        if value.shape[0] != self.n + 1:
            raise ImmersionFailure(f"{self.label}: chart returned {value.shape[0]} coordinates, expected {self.n + 1}")
        if abs(np.linalg.norm(value) - 1.0) > DEFAULTS.user_tol:
            raise NotUnit(f"{self.label}: chart value at u={np.asarray(u).tolist()} is not a unit vector")
        return value

    def with_phase(self, phase: float) -> "SubmanifoldSpec":
        """Same submanifold with the lift multiplied by exp(i phase)"""
        factor = np.exp(1j * phase)
        jet = None
        if self.exact_jet is not None:
            exact = self.exact_jet

            def jet(u):
                c, first, second = exact(u)
                return factor * c, factor * first, factor * second

        return SubmanifoldSpec(self.k, self.n, lambda u: factor * self.chart(u), self.domain_box,
                               f"{self.label}@phase", jet)


@dataclass(frozen=True)
class Jet:
    z: UnitHopfPoint
    first: np.ndarray
    second: np.ndarray
    step: Optional[float]


@dataclass(frozen=True)
class TangentSplit:
    """Ranks and bases of the splittings T = H + D and N = E + N"""

    rank_H: int
    rank_D: int
    rank_E: int
    rank_N: int
    H: np.ndarray
    D: np.ndarray
    E: np.ndarray
    N: np.ndarray


@dataclass(frozen=True)
class SecondFundamentalData:
    """Second fundamental form H along e_2n, the coefficients r and the Kahler angle theta"""

    H: np.ndarray
    r: np.ndarray
    theta: float

    @property
    def k(self) -> int:
        return self.H.shape[0]

    @property
    def r_tangent(self) -> np.ndarray:
        return self.r[:self.k]

    @property
    def r_normal(self) -> np.ndarray:
        return self.r[self.k:]


@dataclass(frozen=True)
class SamplingPlan:
    """Where and how densely a submanifold is sampled"""

    grid: Tuple[int, ...]
    normals: int = 8
    random_normals: int = 4
    taus: Tuple[float, ...] = (0.1, 0.5, 0.9)
    seed: int = 0
    step: float = DEFAULTS.fd_step
    richardson: bool = False
    analytic: bool = False
    workers: int = 1

    @staticmethod
    def default_grid(k: int) -> Tuple[int, ...]:
        if k == 1:
            return (25,)
        if k == 2:
            return (5, 5)
        return (3,) * k


def grid_points(spec: SubmanifoldSpec, plan: SamplingPlan) -> List[np.ndarray]:
    """Tensor grid over the domain box, kept two steps inside its boundary"""
    if len(plan.grid) != spec.k:
        raise ValueError(f"Grid has {len(plan.grid)} axes for a {spec.k}-dimensional chart")
    margin = 2.0 * plan.step
    axes = [
        np.linspace(low + margin, high - margin, count)
        for (low, high), count in zip(spec.domain_box, plan.grid)
    ]
    return [np.array(p) for p in itertools.product(*axes)]


def _finite_difference_jet(spec: SubmanifoldSpec, u: np.ndarray, h: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    k = spec.k
    c0 = spec.evaluate(u)
    basis = np.eye(k)
    plus = [spec.evaluate(u + h * basis[i]) for i in range(k)]
    minus = [spec.evaluate(u - h * basis[i]) for i in range(k)]

    first = np.array([(plus[i] - minus[i]) / (2 * h) for i in range(k)])
    second = np.empty((k, k, spec.n + 1), dtype=complex)
    for i in range(k):
        second[i, i] = (plus[i] - 2 * c0 + minus[i]) / h ** 2
        for j in range(i + 1, k):
            di, dj = h * basis[i], h * basis[j]
            mixed = (
                spec.evaluate(u + di + dj) - spec.evaluate(u + di - dj)
                - spec.evaluate(u - di + dj) + spec.evaluate(u - di - dj)
            ) / (4 * h ** 2)
            second[i, j] = second[j, i] = mixed
    return c0, first, second


def jet(spec: SubmanifoldSpec, u: Sequence[float], step: float = DEFAULTS.fd_step,
        richardson: bool = False) -> Jet:
    """Central-difference jet of the lift at u

    With ``richardson`` the step-h and step-h/2 estimates are combined as (4 D(h/2) - D(h)) / 3.
    """
    u = np.asarray(u, dtype=float).reshape(spec.k)
    if step <= 0:
        raise ValueError("Finite-difference step must be positive")
    if not spec.contains(u, margin=step):
        raise OutOfDomain(f"{spec.label}: u={u.tolist()} with step {step} leaves the domain box")

    c0, first, second = _finite_difference_jet(spec, u, step)
    if richardson:
        _, first_half, second_half = _finite_difference_jet(spec, u, step / 2)
        first = (4 * first_half - first) / 3
        second = (4 * second_half - second) / 3
    return Jet(normalize(c0), first, second, step)


def exact_jet(spec: SubmanifoldSpec, u: Sequence[float]) -> Jet:
    if spec.exact_jet is None:
        raise ValueError(f"{spec.label} has no exact jet")
    u = np.asarray(u, dtype=float).reshape(spec.k)
    if not spec.contains(u):
        raise OutOfDomain(f"{spec.label}: u={u.tolist()} outside the domain box")
    c0, first, second = spec.exact_jet(u)
    return Jet(normalize(c0), np.asarray(first, dtype=complex), np.asarray(second, dtype=complex), None)


class LocalGeometry:
    """Frame-independent data at one parameter point, shared by every normal sampled there

    Holds the horizontal lifts of the coordinate fields, the orthonormal tangent basis
    e = X A, and an orthonormal basis of the horizontal normal space.
    """

    def __init__(self, spec: SubmanifoldSpec, u: Sequence[float], step: float = DEFAULTS.fd_step,
                 richardson: bool = False, analytic: bool = False):
        self.spec = spec
        self.u = np.asarray(u, dtype=float).reshape(spec.k)
        self.jet = exact_jet(spec, self.u) if analytic else jet(spec, self.u, step, richardson)
        z = self.jet.z
        self.z = z

        # fiber components phi_i = <d_i c, i c>; zero when the lift is horizontal at u
        self.phi = np.array([real_inner(d, z.fiber) for d in self.jet.first])
        self.lifts = np.array([horizontal_project(z, d) for d in self.jet.first])

        real_lifts = np.column_stack([realify(x) for x in self.lifts]) if spec.k else np.zeros((2 * spec.n + 2, 0))
        singular = np.linalg.svd(real_lifts, compute_uv=False) if spec.k else np.zeros(0)
        if spec.k and singular[-1] < 1e-6 * max(1.0, singular[0]):
            raise ImmersionFailure(f"{spec.label}: chart is not an immersion at u={self.u.tolist()}")

        self.tangents = np.array(gram_schmidt(self.lifts, against=(z.z, z.fiber)))
        if spec.k:
            real_tangents = np.column_stack([realify(t) for t in self.tangents])
            self.A = np.linalg.lstsq(real_lifts, real_tangents, rcond=None)[0]
        else:
            self.A = np.zeros((0, 0))

        known = np.column_stack([realify(z.z), realify(z.fiber)] + [realify(t) for t in self.tangents])
        fill = householder_complement(known, 2 * spec.n - spec.k)
        self.normal_basis = np.array([complexify(fill[:, j]) for j in range(fill.shape[1])]).reshape(-1, spec.n + 1)

    def check_normal(self, nu: np.ndarray) -> np.ndarray:
        nu = np.asarray(nu, dtype=complex).reshape(-1)
        if abs(np.linalg.norm(nu) - 1.0) > DEFAULTS.normal_tol:
            raise NotUnit(f"Normal has norm {np.linalg.norm(nu):.6f}")
        if horizontal_defect(self.z, nu) > DEFAULTS.normal_tol:
            raise NotHorizontal("Normal direction is not horizontal")
        for t in self.tangents:
            if abs(real_inner(t, nu)) > DEFAULTS.normal_tol:
                raise NotNormal(f"Normal direction fails orthogonality ({real_inner(t, nu):.3e})")
        return nu

    def coordinate_II(self, nu: np.ndarray) -> np.ndarray:
        """II(d_i, d_j) . nu on the horizontal lifts of the coordinate fields"""
        k = self.spec.k
        ii = np.empty((k, k))
        for i in range(k):
            for j in range(i, k):
                value = (
                    real_inner(self.jet.second[i, j], nu)
                    - self.phi[i] * real_inner(1j * self.lifts[j], nu)
                    - self.phi[j] * real_inner(1j * self.lifts[i], nu)
                )
                ii[i, j] = ii[j, i] = value
        return ii

    def II(self, nu: np.ndarray) -> np.ndarray:
        """Scalar second fundamental form along nu in the orthonormal tangent basis"""
        h = self.A.T @ self.coordinate_II(nu) @ self.A
        return 0.5 * (h + h.T)

    def frame(self, nu: np.ndarray) -> AdaptedFrame:
        return complete_adapted_frame(self.z, list(self.tangents), nu)

    def second_fundamental(self, nu: np.ndarray) -> Tuple[SecondFundamentalData, AdaptedFrame]:
        nu = self.check_normal(nu)
        nu = nu / np.linalg.norm(nu)
        frame = self.frame(nu)
        i_nu = 1j * frame.nu
        r = np.array([real_inner(i_nu, frame.e[a]) for a in range(1, 2 * frame.n)])
        cos_theta = float(np.clip(np.linalg.norm(r[:self.spec.k]), 0.0, 1.0))
        return SecondFundamentalData(self.II(nu), r, float(np.arccos(cos_theta))), frame

    def tangent_split(self, tol: float = DEFAULTS.rank_tol) -> TangentSplit:
        k = self.spec.k
        n = self.spec.n
        h_dirs, d_dirs = _j_invariant_split(self.tangents, tol, self.spec.label)
        n_dirs, e_dirs = _j_invariant_split(self.normal_basis, tol, self.spec.label)
        split = TangentSplit(len(h_dirs), len(d_dirs), len(e_dirs), len(n_dirs),
                             h_dirs, d_dirs, e_dirs, n_dirs)
        if split.rank_D != split.rank_E or split.rank_H + split.rank_D != k \
                or split.rank_H + split.rank_D + split.rank_E + split.rank_N != 2 * n:
            raise RankAmbiguous(f"{self.spec.label}: inconsistent ranks {split.rank_H}/{split.rank_D}/"
                                f"{split.rank_E}/{split.rank_N} at u={self.u.tolist()}")
        return split

    def mean_curvature_norm(self) -> float:
        """Length of the mean curvature vector, sqrt of the sum of trace(H)^2 over the normal basis"""
        traces = [np.trace(self.II(nu)) for nu in self.normal_basis]
        return float(np.sqrt(np.sum(np.square(traces))))


def _j_invariant_split(vectors: np.ndarray, tol: float, label: str) -> Tuple[np.ndarray, np.ndarray]:
    """Split span(vectors) into its J-invariant part and the complement"""
    count = len(vectors)
    if count == 0:
        empty = np.zeros((0, vectors.shape[1] if vectors.ndim == 2 else 0), dtype=complex)
        return empty, empty
    c = np.array([[real_inner(a, 1j * b) for b in vectors] for a in vectors])
    left, singular, _ = np.linalg.svd(c)
    ambiguous = (singular > tol) & (singular < 1.0 - tol)
    if np.any(ambiguous):
        raise RankAmbiguous(f"{label}: singular values {np.round(singular, 8).tolist()} are neither 0 nor 1",
                            singular_values=singular)
    invariant = singular >= 1.0 - tol
    directions = left.T @ vectors
    return directions[invariant], directions[~invariant]


def jet_for(spec: SubmanifoldSpec, u, plan: Optional[SamplingPlan] = None) -> LocalGeometry:
    plan = plan or SamplingPlan(grid=SamplingPlan.default_grid(spec.k))
    return LocalGeometry(spec, u, plan.step, plan.richardson, plan.analytic)


def tangent_frame(spec: SubmanifoldSpec, u, nu_choice: Optional[np.ndarray] = None,
                  step: float = DEFAULTS.fd_step) -> AdaptedFrame:
    """Adapted frame at u whose distinguished normal is ``nu_choice`` (first normal by default)"""
    geometry = LocalGeometry(spec, u, step)
    nu = geometry.normal_basis[0] if nu_choice is None else geometry.check_normal(nu_choice)
    return geometry.frame(nu)


def second_fundamental(spec: SubmanifoldSpec, u, nu: np.ndarray, step: float = DEFAULTS.fd_step,
                       analytic: bool = False) -> SecondFundamentalData:
    data, _ = LocalGeometry(spec, u, step, analytic=analytic).second_fundamental(nu)
    return data


def tangent_split(spec: SubmanifoldSpec, u, step: float = DEFAULTS.fd_step) -> TangentSplit:
    return LocalGeometry(spec, u, step).tangent_split()


def kahler_angle(spec: SubmanifoldSpec, u, nu: np.ndarray, step: float = DEFAULTS.fd_step) -> float:
    return second_fundamental(spec, u, nu, step).theta


def normal_basis(spec: SubmanifoldSpec, u, step: float = DEFAULTS.fd_step) -> np.ndarray:
    return LocalGeometry(spec, u, step).normal_basis


def mean_curvature_norm(spec: SubmanifoldSpec, u, step: float = DEFAULTS.fd_step, analytic: bool = False) -> float:
    return LocalGeometry(spec, u, step, analytic=analytic).mean_curvature_norm()


def sphere_directions(dim: int, count: int) -> np.ndarray:
    """Deterministic, roughly uniform points on the unit sphere of R^dim"""
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    if dim == 2:
        angles = 2 * np.pi * np.arange(count) / count
        return np.column_stack([np.cos(angles), np.sin(angles)])
    if dim == 3:
        golden = np.pi * (3.0 - np.sqrt(5.0))
        index = np.arange(count) + 0.5
        height = 1.0 - 2.0 * index / count
        radius = np.sqrt(1.0 - height ** 2)
        return np.column_stack([radius * np.cos(golden * index), radius * np.sin(golden * index), height])
    sampler = qmc.Halton(d=dim, scramble=False)
    sampler.fast_forward(1)
    points = ndtri(sampler.random(count))
    return points / np.linalg.norm(points, axis=1, keepdims=True)


def sample_normals(basis: np.ndarray, count: int, random_count: int = 0,
                   rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """Unit normals: a deterministic sphere grid followed by a seeded Gaussian batch"""
    dim = basis.shape[0]
    if dim == 0:
        return np.zeros((0, basis.shape[1] if basis.ndim == 2 else 0), dtype=complex)
    coefficients = [sphere_directions(dim, count)]
    if random_count:
        rng = rng if rng is not None else np.random.default_rng(0)
        batch = rng.standard_normal((random_count, dim))
        coefficients.append(batch / np.linalg.norm(batch, axis=1, keepdims=True))
    return np.vstack(coefficients) @ basis


__all__ = [
    "SubmanifoldSpec",
    "SamplingPlan",
    "Jet",
    "TangentSplit",
    "SecondFundamentalData",
    "LocalGeometry",
    "grid_points",
    "jet",
    "exact_jet",
    "jet_for",
    "tangent_frame",
    "second_fundamental",
    "tangent_split",
    "kahler_angle",
    "normal_basis",
    "mean_curvature_norm",
    "sphere_directions",
    "sample_normals",
]
