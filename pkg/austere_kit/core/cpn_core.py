"""
Linear algebra on complex projective space through the Hopf lift

Points of CP^n are represented by unit row vectors z in C^(n+1) (points of S^(2n+1)).
C^(n+1) is treated as R^(2n+2) through v -> (Re v; Im v) and the real inner product
<v, w> = Re(v . conj(w)). Unitaries act on the right.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
import scipy.linalg

from .errors import DegenerateBasis, NotHorizontal, NotNormal, NotUnit, ZeroVector

logger = logging.getLogger(__name__)

ArrayLike = Union[Sequence[complex], np.ndarray]


@dataclass(frozen=True)
class NumericDefaults:
    """Tolerances and step sizes shared by every module"""

    zero_tol: float = 1e-14
    unit_tol: float = 1e-12
    frame_tol: float = 1e-10
    user_tol: float = 1e-8
    normal_tol: float = 1e-6
    rank_tol: float = 1e-6
    theta_tol: float = 1e-8
    chart_tol: float = 1e-12
    tau_cap: float = 1.0 - 1e-8
    fd_step: float = 1e-4
    tol_austere_fd: float = 1e-6
    tol_austere_analytic: float = 1e-9
    tol_lagrangian_fd: float = 1e-6
    tol_lagrangian_analytic: float = 1e-9


DEFAULTS = NumericDefaults()


def as_complex_vector(v: ArrayLike) -> np.ndarray:
    return np.asarray(v, dtype=complex).reshape(-1)


def real_inner(v: ArrayLike, w: ArrayLike) -> float:
    """Real Euclidean inner product on C^(n+1) viewed as R^(2n+2)"""
    return float(np.real(np.vdot(as_complex_vector(v), as_complex_vector(w))))


def hermitian_pair(v: ArrayLike, w: ArrayLike) -> complex:
    """Return v . conj(w)"""
    return complex(np.vdot(as_complex_vector(w), as_complex_vector(v)))


def realify(v: ArrayLike) -> np.ndarray:
    v = as_complex_vector(v)
    return np.concatenate([v.real, v.imag])


def complexify(x: np.ndarray) -> np.ndarray:
    half = x.shape[0] // 2
    return x[:half] + 1j * x[half:]


@dataclass(frozen=True)
class UnitHopfPoint:
    """A unit vector of C^(n+1), a point of S^(2n+1) over a point of CP^n"""

    z: np.ndarray

    def __post_init__(self):
        z = np.array(self.z, dtype=complex).reshape(-1)
        norm = np.linalg.norm(z)
        if abs(norm - 1.0) > DEFAULTS.unit_tol:
            raise NotUnit(f"Hopf point has norm {norm:.3e}, expected 1")
        z.setflags(write=False)
        object.__setattr__(self, "z", z)

    @property
    def n(self) -> int:
        return self.z.shape[0] - 1

    @property
    def fiber(self) -> np.ndarray:
        """Fiber direction i z"""
        return 1j * self.z


def _point(z: Union[UnitHopfPoint, ArrayLike]) -> UnitHopfPoint:
    return z if isinstance(z, UnitHopfPoint) else UnitHopfPoint(as_complex_vector(z))


def normalize(zeta: ArrayLike) -> UnitHopfPoint:
    """Scale a nonzero homogeneous representative to unit length"""
    zeta = as_complex_vector(zeta)
    norm = np.linalg.norm(zeta)
    if norm < DEFAULTS.zero_tol:
        raise ZeroVector(f"Cannot normalize vector of norm {norm:.3e}")
    return UnitHopfPoint(zeta / norm)


def horizontal_project(z: Union[UnitHopfPoint, ArrayLike], v: ArrayLike) -> np.ndarray:
    """Remove the components of v along z and i z

    Equivalent to v - (v . conj(z)) z for unit z.
    """
    z = _point(z).z
    v = as_complex_vector(v)
    return v - np.vdot(z, v) * z


def horizontal_defect(z: Union[UnitHopfPoint, ArrayLike], v: ArrayLike) -> float:
    """Largest of |<v, z>| and |<v, i z>|"""
    pairing = hermitian_pair(v, _point(z).z)
    return max(abs(pairing.real), abs(pairing.imag))


def _unit_phase(column: np.ndarray) -> np.ndarray:
    """Rotate (or flip) a column so its largest-magnitude entry is real positive"""
    pivot = int(np.argmax(np.abs(column)))
    value = column[pivot]
    if np.iscomplexobj(column):
        return column * (np.conj(value) / abs(value))
    return column if value > 0 else -column


def householder_complement(known: np.ndarray, count: int) -> np.ndarray:
    """Orthonormal completion of the columns of ``known``

    Parameters
    ----------
    known : ndarray, shape (N, m)
        Orthonormal columns, real or complex.
    count : int
        Number of complement columns to return, normally N - m.

    Returns
    -------
    ndarray, shape (N, count)
        Columns orthonormal to each other and to ``known``. The projector onto the
        complement is factored by column-pivoted Householder QR, so the result depends
        only on the input; each column is phase-fixed by ``_unit_phase``.
    """
    size = known.shape[0]
    if count == 0:
        return np.zeros((size, 0), dtype=known.dtype)
    projector = np.eye(size, dtype=known.dtype) - known @ known.conj().T
    q, _, _ = scipy.linalg.qr(projector, pivoting=True)
    columns = []
    for j in range(count):
        c = q[:, j]
        # one reorthogonalization pass against known and accepted columns
        c = c - known @ (known.conj().T @ c)
        for prev in columns:
            c = c - prev * np.vdot(prev, c)
        norm = np.linalg.norm(c)
        if norm < DEFAULTS.frame_tol:
            raise DegenerateBasis(f"Householder completion lost rank at column {j}")
        columns.append(_unit_phase(c / norm))
    return np.column_stack(columns)


@dataclass(frozen=True)
class StandardizingUnitary:
    """Unitary U with z U = E0 and h U = i En"""

    U: np.ndarray

    def apply(self, v: ArrayLike) -> np.ndarray:
        return as_complex_vector(v) @ self.U

    def unitarity_error(self) -> float:
        n1 = self.U.shape[0]
        return float(np.max(np.abs(self.U @ self.U.conj().T - np.eye(n1))))


def standardize(z: Union[UnitHopfPoint, ArrayLike], h: ArrayLike) -> StandardizingUnitary:
    """Build the unitary that moves (z, h) to (E0, i En)"""
    point = _point(z)
    h = as_complex_vector(h)
    if abs(np.linalg.norm(h) - 1.0) > DEFAULTS.frame_tol:
        raise NotUnit(f"Normal vector has norm {np.linalg.norm(h):.6f}")
    defect = horizontal_defect(point, h)
    if defect > DEFAULTS.user_tol:
        raise NotHorizontal(f"Normal vector is not horizontal (defect {defect:.3e})")

    first = np.conj(point.z)
    last = 1j * np.conj(h)
    known = np.column_stack([first, last])
    middle = householder_complement(known, point.n - 1)
    U = np.column_stack([first, middle, last])
    return StandardizingUnitary(U)


@dataclass(frozen=True)
class AdaptedFrame:
    """Oriented orthonormal frame (z, e_0, ..., e_2n) adapted to a k-dimensional submanifold

    Rows of ``e`` are e_0 = i z, the tangents e_1..e_k, the normals e_(k+1)..e_(2n-1) and the
    distinguished normal e_2n.
    """

    z: UnitHopfPoint
    e: np.ndarray
    k: int

    @property
    def n(self) -> int:
        return self.z.n

    @property
    def tangents(self) -> np.ndarray:
        return self.e[1:self.k + 1]

    @property
    def normals(self) -> np.ndarray:
        """Horizontal normal frame e_(k+1), ..., e_2n"""
        return self.e[self.k + 1:]

    @property
    def nu(self) -> np.ndarray:
        return self.e[-1]

    def real_matrix(self) -> np.ndarray:
        """Stacked rows (z, e_0, ..., e_2n) in real form, an element of SO(2n+2)"""
        return np.vstack([realify(self.z.z)] + [realify(row) for row in self.e])

    def orthogonality_error(self) -> float:
        m = self.real_matrix()
        return float(np.max(np.abs(m @ m.T - np.eye(m.shape[0]))))

    def transform(self, unitary: StandardizingUnitary) -> "AdaptedFrame":
        """Apply a unitary on the right to every frame vector"""
        return AdaptedFrame(
            UnitHopfPoint(unitary.apply(self.z.z)),
            self.e @ unitary.U,
            self.k,
        )


def gram_schmidt(vectors: Sequence[ArrayLike], against: Sequence[np.ndarray] = ()) -> list:
    """Real Gram-Schmidt in the given order, orthogonal to ``against``"""
    basis = []
    for index, v in enumerate(vectors):
        w = as_complex_vector(v).copy()
        for _ in range(2):
            for b in list(against) + basis:
                w = w - real_inner(w, b) * b
        norm = np.linalg.norm(w)
        if norm < DEFAULTS.frame_tol:
            raise DegenerateBasis(f"Gram-Schmidt pivot {norm:.3e} at tangent vector {index}")
        basis.append(w / norm)
    return basis


def complete_adapted_frame(
    z: Union[UnitHopfPoint, ArrayLike],
    tangent_basis: Sequence[ArrayLike],
    distinguished_normal: ArrayLike,
) -> AdaptedFrame:
    """Extend tangents and a unit normal to an oriented adapted frame"""
    point = _point(z)
    n = point.n
    k = len(tangent_basis)
    nu = as_complex_vector(distinguished_normal)

    if abs(np.linalg.norm(nu) - 1.0) > DEFAULTS.user_tol:
        raise NotUnit(f"Distinguished normal has norm {np.linalg.norm(nu):.6f}")
    if horizontal_defect(point, nu) > DEFAULTS.user_tol:
        raise NotHorizontal("Distinguished normal is not horizontal")
    for t in tangent_basis:
        if horizontal_defect(point, t) > DEFAULTS.user_tol * max(1.0, np.linalg.norm(t)):
            raise NotHorizontal("Tangent vector is not horizontal")

    tangents = gram_schmidt(tangent_basis, against=(point.z, point.fiber))
    for t in tangents:
        if abs(real_inner(t, nu)) > DEFAULTS.normal_tol:
            raise NotNormal(f"Normal fails orthogonality to tangents ({real_inner(t, nu):.3e})")

    known = np.column_stack(
        [realify(point.z), realify(point.fiber)] + [realify(t) for t in tangents] + [realify(nu)]
    )
    fill = householder_complement(known, 2 * n - k - 1)
    completion = [complexify(fill[:, j]) for j in range(fill.shape[1])]

    rows = [point.fiber] + tangents + completion + [nu]
    frame = AdaptedFrame(point, np.array(rows, dtype=complex), k)

    if np.linalg.det(frame.real_matrix()) < 0:
        flip = frame.e.copy()
        # last completion vector, or the last tangent when the normal is the whole complement
        flip[2 * n - 1 if completion else k] *= -1
        frame = AdaptedFrame(point, flip, k)

    logger.debug(f"Adapted frame n={n} k={k} orthogonality error {frame.orthogonality_error():.2e}")
    return frame


def elementary(n: int, index: int) -> np.ndarray:
    """Elementary basis row vector E_index of C^(n+1)"""
    v = np.zeros(n + 1, dtype=complex)
    v[index] = 1.0
    return v


__all__ = [
    "NumericDefaults",
    "DEFAULTS",
    "UnitHopfPoint",
    "AdaptedFrame",
    "StandardizingUnitary",
    "real_inner",
    "hermitian_pair",
    "realify",
    "complexify",
    "normalize",
    "horizontal_project",
    "horizontal_defect",
    "householder_complement",
    "standardize",
    "gram_schmidt",
    "complete_adapted_frame",
    "elementary",
]
