"""
Lagrangian and special Lagrangian checks for the embedded normal bundle

The tangent space of the embedded normal bundle at the point over (z, t e_2n), with the
frame in standard position z = E0, e_2n = i En, is spanned by the rows of a 2n x 2n
matrix S. The submanifold is austere exactly when the phase of det S is constant, which
reduces to polynomial conditions on the second fundamental form.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from .cpn_core import (
    DEFAULTS,
    AdaptedFrame,
    UnitHopfPoint,
    complexify,
    elementary,
    householder_complement,
    real_inner,
    realify,
    standardize,
)
from .errors import (
    AustereError,
    DimensionMismatch,
    FrameAlignmentError,
    NotComplexStructure,
    NotStandardPosition,
    RankAmbiguous,
    WrongDimension,
)
from .immersion import LocalGeometry, SamplingPlan, SecondFundamentalData, SubmanifoldSpec, grid_points, sample_normals
from .stenzel_metric import kahler_matrix, stenzel_form_standard

logger = logging.getLogger(__name__)

AUSTERE = "austere_within_tol"
NOT_AUSTERE = "not_austere"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class NormalBundleTangentBasis:
    S: np.ndarray
    tau: float
    frame: AdaptedFrame

    @property
    def n(self) -> int:
        return self.S.shape[0] // 2


@dataclass(frozen=True)
class Tolerances:
    tol_austere: float = DEFAULTS.tol_austere_fd
    tol_lagrangian: float = DEFAULTS.tol_lagrangian_fd
    tol_detS: float = 1e-8
    allow_rank_ambiguous: bool = False

    @classmethod
    def for_plan(cls, plan: SamplingPlan, **overrides) -> "Tolerances":
        if plan.analytic:
            base = cls(DEFAULTS.tol_austere_analytic, DEFAULTS.tol_lagrangian_analytic)
        else:
            base = cls()
        return replace(base, **{k: v for k, v in overrides.items() if v is not None})


@dataclass
class SampleRecord:
    """Everything measured at one (u, nu) sample"""

    index: int
    u: List[float]
    nu: List[complex]
    theta: float = float("nan")
    residuals: List[float] = field(default_factory=list)
    trace: float = float("nan")
    lagrangian_defect: Dict[float, float] = field(default_factory=dict)
    detS_error: Dict[float, float] = field(default_factory=dict)
    phase: Dict[float, float] = field(default_factory=dict)
    lemma2_error: Optional[float] = None
    status: str = "ok"

    @property
    def max_residual(self) -> float:
        return max((abs(r) for r in self.residuals), default=0.0)


@dataclass
class AusterityReport:
    label: str
    verdict: str
    tolerances: Tolerances
    samples: List[SampleRecord]
    mean_curvature: List[float]
    ambiguous_points: List[List[float]]

    @property
    def scored(self) -> List[SampleRecord]:
        return [s for s in self.samples if s.status == "ok"]

    @property
    def max_residual(self) -> float:
        return max((s.max_residual for s in self.scored), default=0.0)

    @property
    def max_trace(self) -> float:
        return max((abs(s.trace) for s in self.scored), default=0.0)

    @property
    def max_lagrangian_defect(self) -> float:
        return max((d for s in self.scored for d in s.lagrangian_defect.values()), default=0.0)

    @property
    def max_detS_error(self) -> float:
        return max((d for s in self.scored for d in s.detS_error.values()), default=0.0)

    @property
    def max_lemma2_error(self) -> float:
        return max((s.lemma2_error for s in self.scored if s.lemma2_error is not None), default=0.0)

    @property
    def max_mean_curvature(self) -> float:
        return max(self.mean_curvature, default=0.0)

    @property
    def lagrangian_ok(self) -> bool:
        return self.max_lagrangian_defect <= self.tolerances.tol_lagrangian


def _trim(v: np.ndarray) -> np.ndarray:
    return v[1:]


def _clip(v: np.ndarray) -> np.ndarray:
    return v[1:-1]


def _last_basis(n: int) -> np.ndarray:
    v = np.zeros(n, dtype=complex)
    v[-1] = 1.0
    return v


def check_standard_position(frame: AdaptedFrame, tol: float = DEFAULTS.user_tol) -> None:
    n = frame.n
    if np.linalg.norm(frame.z.z - elementary(n, 0)) > tol:
        raise NotStandardPosition("z is not E0")
    if np.linalg.norm(frame.nu - 1j * elementary(n, n)) > tol:
        raise NotStandardPosition("e_2n is not i En")


def build_S(data: SecondFundamentalData, frame: AdaptedFrame, tau: float) -> NormalBundleTangentBasis:
    """Rows of the differential of the embedded normal bundle, frame in standard position

    Rows, with trim dropping the first coordinate and En the last basis vector of C^n:
      u_alpha = (e_a - i tau h_ab e_b - tau^2 r_a En ; conj(e_a) - i tau h_ab conj(e_b) - tau^2 r_a En)
      u_mu    = (i tau e_mu ; i tau conj(e_mu))
      u_t     = ((tau^2 - 1) En ; (1 - tau^2) En)
    """
    check_standard_position(frame)
    if abs(tau) >= 1.0:
        raise ValueError(f"tau={tau} must satisfy |tau| < 1")
    n, k = frame.n, frame.k
    if data.H.shape != (k, k):
        raise DimensionMismatch(f"H has shape {data.H.shape}, frame has k={k}")

    tangents = np.array([_trim(e) for e in frame.tangents]).reshape(k, n)
    En = _last_basis(n)
    rows = []
    for a in range(k):
        bend = -1j * tau * (data.H[a] @ tangents)
        bend_bar = -1j * tau * (data.H[a] @ np.conj(tangents))
        rows.append(np.concatenate([
            tangents[a] + bend - tau ** 2 * data.r[a] * En,
            np.conj(tangents[a]) + bend_bar - tau ** 2 * data.r[a] * En,
        ]))
    for mu in range(k + 1, 2 * n):
        e_mu = _trim(frame.e[mu])
        rows.append(np.concatenate([1j * tau * e_mu, 1j * tau * np.conj(e_mu)]))
    rows.append(np.concatenate([(tau ** 2 - 1) * En, (1 - tau ** 2) * En]))
    return NormalBundleTangentBasis(np.array(rows), tau, frame)


def lagrangian_defect(S: NormalBundleTangentBasis, G) -> float:
    """Largest |Omega(row_i, row_j)| over the rows of S"""
    return float(np.max(np.abs(kahler_matrix(G, S.S))))


def det_S_direct(S) -> complex:
    matrix = S.S if isinstance(S, NormalBundleTangentBasis) else np.asarray(S)
    return complex(scipy.linalg.det(matrix))


def _det_or_one(m: np.ndarray) -> complex:
    return complex(np.linalg.det(m)) if m.size else 1.0 + 0j


def det_S_closed(H: np.ndarray, theta: float, tau: float, n: int, k: int,
                 convention: str = "consistent") -> complex:
    """Closed form of det S with H in the aligned basis

    (-2)^n i^(n-k) tau^(2n-k-1) (1 - tau^2) [det(I - i tau H) + tau^2 cos^2(theta) det(I - i tau H_clip)]

    ``convention="as_displayed"`` replaces (-2)^n by 2^n.
    """
    H = np.asarray(H, dtype=float)
    if H.size == 0:
        H = H.reshape(0, 0)
    if H.shape != (k, k):
        raise DimensionMismatch(f"H has shape {H.shape}, expected ({k}, {k})")
    if convention not in ("consistent", "as_displayed"):
        raise ValueError(f"Unknown convention {convention!r}")
    base = -2.0 if convention == "consistent" else 2.0
    prefactor = base ** n * 1j ** (n - k) * tau ** (2 * n - k - 1) * (1 - tau ** 2)
    bracket = _det_or_one(np.eye(k) - 1j * tau * H)
    if k:
        clipped = H[1:, 1:]
        bracket += tau ** 2 * np.cos(theta) ** 2 * _det_or_one(np.eye(k - 1) - 1j * tau * clipped)
    return complex(prefactor * bracket)


def elem_sym_polys(H: np.ndarray) -> np.ndarray:
    """Elementary symmetric polynomials e_1..e_k of the eigenvalues of H"""
    H = np.atleast_2d(np.asarray(H, dtype=float))
    if H.size == 0:
        return np.zeros(0)
    eigenvalues = np.linalg.eigvalsh(0.5 * (H + H.T))
    return np.real(np.poly(-eigenvalues))[1:]


def _e(values: np.ndarray, degree: int) -> float:
    if degree < 1 or degree > len(values):
        return 0.0
    return float(values[degree - 1])


def im_det_expansion(H: np.ndarray, tau: float) -> float:
    """Im det(I - i tau H) as the alternating sum of odd symmetric polynomials"""
    e = elem_sym_polys(H)
    k = len(e)
    return float(sum((-1) ** j * tau ** (2 * j - 1) * _e(e, 2 * j - 1) for j in range(1, (k + 1) // 2 + 1)))


def austere_residuals(H: np.ndarray, theta: float) -> np.ndarray:
    """R_j = H^(2j+1) - cos^2(theta) H_clip^(2j-1) for j = 0..floor(k/2)"""
    H = np.atleast_2d(np.asarray(H, dtype=float))
    if H.shape[0] != H.shape[1]:
        raise DimensionMismatch(f"H must be square, got {H.shape}")
    k = H.shape[0] if H.size else 0
    full = elem_sym_polys(H) if k else np.zeros(0)
    clipped = elem_sym_polys(H[1:, 1:]) if k > 1 else np.zeros(0)
    c2 = np.cos(theta) ** 2
    return np.array([_e(full, 2 * j + 1) - c2 * _e(clipped, 2 * j - 1) for j in range(k // 2 + 1)])


def hypersurface_residuals(A: np.ndarray, A_clipped: np.ndarray) -> np.ndarray:
    """A^(2j+1) - A_clip^(2j-1) for a real hypersurface, j = 0..n-1

    ``A`` is the scalar second fundamental form (size 2n-1) and ``A_clipped`` its restriction
    to the holomorphic distribution.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    size = A.shape[0]
    if size % 2 == 0:
        raise WrongDimension(f"A hypersurface has odd dimension, got {size}")
    if np.asarray(A_clipped).shape != (size - 1, size - 1):
        raise DimensionMismatch("Clipped form must have size one less than A")
    full = elem_sym_polys(A)
    clipped = elem_sym_polys(A_clipped) if size > 1 else np.zeros(0)
    n = (size + 1) // 2
    return np.array([_e(full, 2 * j + 1) - _e(clipped, 2 * j - 1) for j in range(n)])


def highest_degree_condition(H: np.ndarray, theta: float) -> float:
    """II(v, v) for the unit tangent v orthogonal to J nu, H in the aligned basis of a surface"""
    H = np.asarray(H, dtype=float)
    if H.shape != (2, 2):
        raise WrongDimension(f"Highest-degree condition is stated for surfaces, got H of shape {H.shape}")
    return float(H[1, 1])


def check_holomorphic_identity(H: np.ndarray, J: np.ndarray, taus: Optional[Sequence[float]] = None,
                               tol: float = DEFAULTS.user_tol) -> float:
    """max over tau of |Im det(I - i tau H)| when H anticommutes with a complex structure J"""
    H = np.asarray(H, dtype=float)
    J = np.asarray(J, dtype=float)
    k = H.shape[0]
    if J.shape != (k, k):
        raise NotComplexStructure(f"J has shape {J.shape}, expected ({k}, {k})")
    identity = np.eye(k)
    if np.max(np.abs(J @ J + identity)) > tol or np.max(np.abs(J.T @ J - identity)) > tol:
        raise NotComplexStructure("J is not an orthogonal complex structure")
    if np.max(np.abs(H @ J + J @ H)) > tol:
        raise NotComplexStructure("H does not anticommute with J")
    grid = np.linspace(0.0, 0.99, 100) if taus is None else np.asarray(taus, dtype=float)
    return float(max(abs(np.linalg.det(identity - 1j * t * H).imag) for t in grid))


def clipped_matrix(frame: AdaptedFrame) -> np.ndarray:
    """Rows (clip e ; clip conj(e)) for e_2..e_k and e_(k+1)..e_(2n-1)"""
    n, k = frame.n, frame.k
    indices = list(range(2, k + 1)) + list(range(k + 1, 2 * n))
    return np.array([
        np.concatenate([_clip(frame.e[i]), _clip(np.conj(frame.e[i]))]) for i in indices
    ]).reshape(len(indices), 2 * (n - 1))


def alignment_error(frame: AdaptedFrame, theta: float) -> float:
    """|i e_2n - cos(theta) e_1 - sin(theta) e_(2n-1)|, or |i e_2n - e_(2n-1)| when k = 0"""
    n, k = frame.n, frame.k
    target = np.sin(theta) * frame.e[2 * n - 1]
    if k:
        target = target + np.cos(theta) * frame.e[1]
    return float(np.linalg.norm(1j * frame.nu - target))


def lemma2_check(frame: AdaptedFrame, theta: float) -> float:
    """|det V_clip - (-2i)^(n-1) cos(theta)| for an aligned frame in standard position"""
    if frame.k == 0:
        raise DimensionMismatch("The clipped matrix needs at least one tangent vector")
    try:
        check_standard_position(frame)
    except NotStandardPosition as e:
        raise FrameAlignmentError(str(e)) from e
    error = alignment_error(frame, theta)
    if error > DEFAULTS.user_tol:
        raise FrameAlignmentError(f"i e_2n differs from cos(theta) e_1 + sin(theta) e_(2n-1) by {error:.3e}")
    n = frame.n
    det_v = _det_or_one(clipped_matrix(frame))
    return float(abs(det_v - (-2j) ** (n - 1) * np.cos(theta)))


def _orient(rows: np.ndarray, z: UnitHopfPoint, flip_index: int) -> np.ndarray:
    real = np.vstack([realify(z.z)] + [realify(r) for r in rows])
    if np.linalg.det(real) < 0:
        rows = rows.copy()
        rows[flip_index] *= -1
    return rows


def _fill(known_rows: Sequence[np.ndarray], count: int) -> List[np.ndarray]:
    known = np.column_stack([realify(r) for r in known_rows])
    fill = householder_complement(known, count)
    return [complexify(fill[:, j]) for j in range(fill.shape[1])]


def aligned_frame(frame: AdaptedFrame, data: SecondFundamentalData) -> Tuple[AdaptedFrame, SecondFundamentalData]:
    """Rotate the tangent basis so e_1 is the unit tangential part of J nu

    Returns the realigned oriented frame with i e_2n = cos(theta) e_1 + sin(theta) e_(2n-1)
    and the second fundamental data expressed in it. Alignment is skipped when
    cos(theta) is below the crossover tolerance.
    """
    n, k = frame.n, frame.k
    z = frame.z
    nu = frame.nu
    i_nu = 1j * nu
    cos_theta = np.cos(data.theta)

    O = np.eye(k)
    if k and cos_theta >= DEFAULTS.theta_tol:
        direction = data.r_tangent / np.linalg.norm(data.r_tangent)
        rest = householder_complement(direction.reshape(k, 1), k - 1)
        O = np.column_stack([direction, rest])
    tangents = [O[:, a] @ frame.tangents for a in range(k)]

    tangential = sum((real_inner(i_nu, t) * t for t in tangents), np.zeros(n + 1, dtype=complex))
    normal_part = i_nu - tangential
    sin_theta = np.linalg.norm(normal_part)
    if sin_theta > DEFAULTS.theta_tol and k < 2 * n - 1:
        partner = normal_part / sin_theta
        fill = _fill([z.z, z.fiber] + tangents + [partner, nu], 2 * n - k - 2)
        normals = fill + [partner]
    else:
        fill = _fill([z.z, z.fiber] + tangents + [nu], 2 * n - k - 1)
        normals = fill

    rows = np.array([z.fiber] + tangents + normals + [nu])
    real = np.vstack([realify(z.z)] + [realify(row) for row in rows])
    if np.linalg.det(real) < 0:
        # e_1 and the partner of J nu are pinned; flip a free completion vector or e_k
        if fill:
            rows[k + len(fill)] *= -1
        elif k >= 2:
            rows[k] *= -1
            O[:, k - 1] *= -1
        else:
            raise FrameAlignmentError("Aligned frame has no free vector to fix its orientation")

    new_frame = AdaptedFrame(z, rows, k)
    H = O.T @ data.H @ O
    r = np.array([real_inner(i_nu, new_frame.e[a]) for a in range(1, 2 * n)])
    return new_frame, SecondFundamentalData(0.5 * (H + H.T), r, data.theta)


def measured_phase(S, n: int, k: int, tau: float) -> float:
    """Argument of i^(n-k) det S after removing the positive prefactor"""
    scaled = 1j ** (n - k) * det_S_direct(S) / (2 ** n * tau ** (2 * n - k - 1) * (1 - tau ** 2))
    return float(np.angle(scaled))


def phase_criterion(H: np.ndarray, taus: Sequence[float], n: int, rng: Optional[np.random.Generator] = None) -> float:
    """max over tau of |Im(i^(n-k) det S)| / (2^n tau^(2n-k-1) (1 - tau^2)) with J nu normal"""
    H = np.asarray(H, dtype=float)
    k = H.shape[0]
    if k > 2 * n - 2:
        raise WrongDimension("J nu can only be normal when k <= 2n - 2")
    frame = random_aligned_frame(n, k, np.pi / 2, rng if rng is not None else np.random.default_rng(0))
    r = np.zeros(2 * n - 1)
    r[2 * n - 2] = 1.0
    data = SecondFundamentalData(H, r, np.pi / 2)
    worst = 0.0
    for tau in taus:
        S = build_S(data, frame, tau)
        scaled = 1j ** (n - k) * det_S_direct(S) / (2 ** n * tau ** (2 * n - k - 1) * (1 - tau ** 2))
        worst = max(worst, abs(scaled.imag))
    return float(worst)


def random_aligned_frame(n: int, k: int, theta: float, rng: np.random.Generator) -> AdaptedFrame:
    """Random oriented frame in standard position with i e_2n = cos(theta) e_1 + sin(theta) e_(2n-1)

    A hypersurface (k = 2n - 1) forces theta = 0 and k = 0 forces theta = pi/2.
    """
    if not 0 <= k <= 2 * n - 1:
        raise DimensionMismatch(f"k={k} outside 0..{2 * n - 1}")
    if k == 2 * n - 1:
        theta = 0.0
    elif k == 0:
        theta = np.pi / 2
    z = UnitHopfPoint(elementary(n, 0))
    En = elementary(n, n)
    nu = 1j * En

    if n >= 2:
        w = np.zeros(n + 1, dtype=complex)
        w[1:n] = rng.standard_normal(n - 1) + 1j * rng.standard_normal(n - 1)
        w /= np.linalg.norm(w)
    else:
        w = np.zeros(n + 1, dtype=complex)
    first = -np.cos(theta) * En + np.sin(theta) * w
    partner = -np.sin(theta) * En - np.cos(theta) * w

    def random_vectors(count, known):
        vectors = []
        for _ in range(count):
            v = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
            for b in known + vectors:
                v = v - real_inner(v, b) * b
            for b in known + vectors:
                v = v - real_inner(v, b) * b
            vectors.append(v / np.linalg.norm(v))
        return vectors

    base = [z.z, z.fiber, nu]
    if k == 0:
        others = random_vectors(2 * n - 2, base + [partner])
        rows = [z.fiber] + others + [partner, nu]
    elif k == 2 * n - 1:
        others = random_vectors(k - 1, base + [first])
        rows = [z.fiber, first] + others + [nu]
    else:
        tangents = random_vectors(k - 1, base + [first, partner])
        normals = random_vectors(2 * n - k - 2, base + [first, partner] + tangents)
        rows = [z.fiber, first] + tangents + normals + [partner, nu]

    rows = np.array(rows)
    flip = 2 * n - 2 if 2 * n - 2 >= 2 else 1
    if n >= 2:
        rows = _orient(rows, z, flip)
    return AdaptedFrame(z, rows, k)


@dataclass(frozen=True)
class Checks:
    lagrangian: bool = True
    austerity: bool = True
    detS_crosscheck: bool = True
    lemma2: bool = False


def _measure_sample(index: int, geometry: LocalGeometry, nu: np.ndarray, plan: SamplingPlan,
                    checks: Checks) -> SampleRecord:
    n, k = geometry.spec.n, geometry.spec.k
    record = SampleRecord(index, geometry.u.tolist(), [complex(x) for x in nu])
    data, frame = geometry.second_fundamental(nu)
    frame, data = aligned_frame(frame, data)
    record.theta = data.theta
    record.trace = float(np.trace(data.H))
    if checks.austerity:
        record.residuals = austere_residuals(data.H, data.theta).tolist()

    if checks.lagrangian or checks.detS_crosscheck or checks.lemma2:
        standard = frame.transform(standardize(frame.z, frame.nu))
        if checks.lemma2 and n >= 2 and k >= 1:
            record.lemma2_error = lemma2_check(standard, data.theta)
        for tau in plan.taus:
            S = build_S(data, standard, tau)
            if checks.lagrangian:
                record.lagrangian_defect[tau] = lagrangian_defect(S, stenzel_form_standard(tau, n))
            if checks.detS_crosscheck and tau > 0:
                direct = det_S_direct(S)
                closed = det_S_closed(data.H, data.theta, tau, n, k)
                record.detS_error[tau] = abs(direct - closed) / max(abs(direct), np.finfo(float).tiny)
                record.phase[tau] = measured_phase(S, n, k, tau)
    return record


def _measure_point(index: int, u: np.ndarray, spec: SubmanifoldSpec, plan: SamplingPlan, checks: Checks,
                   tolerances: Tolerances) -> Tuple[List[SampleRecord], Optional[float], bool]:
    geometry = LocalGeometry(spec, u, plan.step, plan.richardson, plan.analytic)
    rng = np.random.default_rng([plan.seed, index])
    normals = sample_normals(geometry.normal_basis, plan.normals, plan.random_normals, rng)
    try:
        geometry.tangent_split()
    except RankAmbiguous as e:
        logger.warning(f"{spec.label}: rank ambiguous at u={geometry.u.tolist()}: {e}")
        records = [SampleRecord(index, geometry.u.tolist(), [complex(x) for x in nu], status="rank_ambiguous")
                   for nu in normals]
        return records, None, True
    records = [_measure_sample(index, geometry, nu, plan, checks) for nu in normals]
    return records, geometry.mean_curvature_norm(), False


def _map_points(func, points: Sequence[np.ndarray], workers: int) -> list:
    if workers <= 1:
        return [func(i, u) for i, u in enumerate(points)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, range(len(points)), points))


def is_austere(spec: SubmanifoldSpec, plan: SamplingPlan, tols: Optional[Tolerances] = None,
               checks: Optional[Checks] = None) -> AusterityReport:
    """Sample (u, nu) pairs and decide austerity from the residuals R_j"""
    tols = tols or Tolerances.for_plan(plan)
    checks = checks or Checks()
    points = grid_points(spec, plan)
    logger.info(f"{spec.label}: sampling {len(points)} points x {plan.normals + plan.random_normals} normals")

    results = _map_points(lambda i, u: _measure_point(i, u, spec, plan, checks, tols), points, plan.workers)

    samples: List[SampleRecord] = []
    curvature: List[float] = []
    ambiguous: List[List[float]] = []
    for (records, mean_curvature, is_ambiguous), u in zip(results, points):
        samples.extend(records)
        if is_ambiguous:
            ambiguous.append(np.asarray(u).tolist())
        else:
            curvature.append(mean_curvature)

    report = AusterityReport(spec.label, INCONCLUSIVE, tols, samples, curvature, ambiguous)
    if ambiguous and not tols.allow_rank_ambiguous:
        verdict = INCONCLUSIVE
    elif not report.scored:
        # a submanifold with no normal directions satisfies the conditions vacuously
        verdict = AUSTERE if spec.k == 2 * spec.n and not ambiguous else INCONCLUSIVE
    elif report.max_residual <= tols.tol_austere:
        verdict = AUSTERE
    else:
        verdict = NOT_AUSTERE
    report.verdict = verdict
    logger.info(f"{spec.label}: verdict {verdict}, max residual {report.max_residual:.3e}, "
                f"max Lagrangian defect {report.max_lagrangian_defect:.3e}")
    return report


@dataclass(frozen=True)
class SurfaceClassification:
    label: str
    rank_H: List[int]
    max_II: float
    max_residual: float
    max_highest_degree: float


def surface_classify(spec: SubmanifoldSpec, plan: SamplingPlan, tol: Optional[float] = None) -> SurfaceClassification:
    """Sort a sampled surface into holomorphic, totally geodesic, not austere or inconclusive"""
    if spec.k != 2:
        raise WrongDimension(f"Surface classification needs k = 2, got k = {spec.k}")
    tol = tol if tol is not None else Tolerances.for_plan(plan).tol_austere

    ranks: List[int] = []
    max_II = 0.0
    max_residual = 0.0
    max_highest = 0.0
    ambiguous = False
    for index, u in enumerate(grid_points(spec, plan)):
        geometry = LocalGeometry(spec, u, plan.step, plan.richardson, plan.analytic)
        try:
            ranks.append(geometry.tangent_split().rank_H)
        except RankAmbiguous:
            ambiguous = True
            continue
        size = np.sqrt(sum(np.sum(geometry.II(nu) ** 2) for nu in geometry.normal_basis))
        max_II = max(max_II, float(size))
        rng = np.random.default_rng([plan.seed, index])
        for nu in sample_normals(geometry.normal_basis, plan.normals, plan.random_normals, rng):
            data, frame = geometry.second_fundamental(nu)
            _, aligned = aligned_frame(frame, data)
            max_residual = max(max_residual, float(np.max(np.abs(austere_residuals(aligned.H, aligned.theta)))))
            if ranks[-1] == 0:
                max_highest = max(max_highest, abs(highest_degree_condition(aligned.H, aligned.theta)))

    if ambiguous:
        label = INCONCLUSIVE
    elif ranks and all(r == 2 for r in ranks):
        label = "holomorphic"
    elif ranks and all(r == 0 for r in ranks) and max_II <= tol:
        label = "totally_geodesic"
    elif max_residual > tol:
        label = NOT_AUSTERE
    else:
        label = INCONCLUSIVE
    logger.info(f"{spec.label}: surface branch {label} (max II {max_II:.3e}, max residual {max_residual:.3e})")
    return SurfaceClassification(label, ranks, max_II, max_residual, max_highest)


def finite_difference_order(spec: SubmanifoldSpec, analytic_II, u: Sequence[float],
                            normals: np.ndarray, steps: Sequence[float] = (1e-1, 1e-2, 1e-3)) -> float:
    """Log-log slope of the finite-difference II error against the step

    The default steps stop at 1e-3. Second differences at h = 1e-4 carry roundoff of order
    eps / h^2, about 2e-8, which is above the truncation error there and flattens the slope.
    The jet itself still defaults to 1e-4, where that roundoff is within tolerance.
    """
    errors = []
    for step in steps:
        geometry = LocalGeometry(spec, u, step)
        worst = 0.0
        for nu in normals:
            worst = max(worst, float(np.max(np.abs(geometry.II(nu) - analytic_II(u, nu)))))
        errors.append(worst)
    if min(errors) <= 0:
        raise AustereError("Finite-difference error vanished; choose an entry with nonzero II")
    slope, _ = np.polyfit(np.log(steps), np.log(errors), 1)
    return float(slope)


__all__ = [
    "AUSTERE",
    "NOT_AUSTERE",
    "INCONCLUSIVE",
    "NormalBundleTangentBasis",
    "Tolerances",
    "Checks",
    "SampleRecord",
    "AusterityReport",
    "SurfaceClassification",
    "check_standard_position",
    "build_S",
    "lagrangian_defect",
    "det_S_direct",
    "det_S_closed",
    "elem_sym_polys",
    "im_det_expansion",
    "austere_residuals",
    "hypersurface_residuals",
    "highest_degree_condition",
    "check_holomorphic_identity",
    "clipped_matrix",
    "alignment_error",
    "lemma2_check",
    "aligned_frame",
    "measured_phase",
    "phase_criterion",
    "random_aligned_frame",
    "is_austere",
    "surface_classify",
    "finite_difference_order",
]
