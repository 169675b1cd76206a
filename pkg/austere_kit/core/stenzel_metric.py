"""
The Stenzel Kahler form on the complement of the quadric in CP^n x CP^n

Points are pairs (z; w) of row vectors in C^(n+1). In the affine gauge z_0 = w_0 = 1 the
Kahler form is written with a hermitian 2n x 2n matrix G acting on rows (dZ; dW), and
tangent vectors are rows of C^(2n).
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .cpn_core import DEFAULTS, ArrayLike, as_complex_vector
from .errors import ChartSingular, DimensionMismatch, NotInB, TauOutOfRange, ZeroVector

logger = logging.getLogger(__name__)

SERIES_CUTOFF = 1e-8


@dataclass(frozen=True)
class AffinePoint:
    Z: np.ndarray
    W: np.ndarray

    def __post_init__(self):
        Z = as_complex_vector(self.Z)
        W = as_complex_vector(self.W)
        if Z.shape != W.shape:
            raise DimensionMismatch(f"Z has {Z.shape[0]} entries, W has {W.shape[0]}")
        if abs(1.0 + Z @ W) <= DEFAULTS.chart_tol:
            raise ChartSingular("Point lies on the quadric 1 + Z.W = 0")
        object.__setattr__(self, "Z", Z)
        object.__setattr__(self, "W", W)

    @property
    def n(self) -> int:
        return self.Z.shape[0]


@dataclass(frozen=True)
class ExhaustionData:
    A: float
    B: complex
    Ncal: float


@dataclass(frozen=True)
class StenzelForm:
    """Hermitian coefficient matrix G; ``tau`` is set when built at the standard point"""

    G: np.ndarray
    tau: Optional[float] = None

    @property
    def n(self) -> int:
        return self.G.shape[0] // 2

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.G - self.G.conj().T)))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(0.5 * (self.G + self.G.conj().T))[0])


def tau_of(t: float) -> float:
    """Fiber parameter tau = tanh t of the standard point"""
    return float(np.tanh(t))


def phi_hat(zeta: ArrayLike, xi: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
    """Embed a normal vector xi at zeta into C^(n+1) x C^(n+1)

    Returns (cosh(mu) zeta + i sinh(mu)/mu xi ; cosh(mu) conj(zeta) + i sinh(mu)/mu conj(xi))
    with mu = |xi| / |zeta|.
    """
    zeta = as_complex_vector(zeta)
    xi = as_complex_vector(xi)
    if zeta.shape != xi.shape:
        raise DimensionMismatch("zeta and xi must have the same length")
    size = np.linalg.norm(zeta)
    if size < DEFAULTS.zero_tol:
        raise ZeroVector("zeta must be nonzero")
    pairing = np.vdot(zeta, xi)
    if abs(pairing) > DEFAULTS.frame_tol * max(1.0, size * np.linalg.norm(xi)):
        raise NotInB(f"xi . conj(zeta) = {pairing:.3e}, expected 0")

    mu = np.linalg.norm(xi) / size
    ratio = 1.0 + mu ** 2 / 6.0 if mu < SERIES_CUTOFF else np.sinh(mu) / mu
    first = np.cosh(mu) * zeta + 1j * ratio * xi
    second = np.cosh(mu) * np.conj(zeta) + 1j * ratio * np.conj(xi)
    return first, second


def affine_chart(pair: Tuple[ArrayLike, ArrayLike]) -> AffinePoint:
    z, w = (as_complex_vector(p) for p in pair)
    if abs(z[0]) <= DEFAULTS.chart_tol or abs(w[0]) <= DEFAULTS.chart_tol:
        raise ChartSingular(f"Leading coordinates z0={z[0]:.3e}, w0={w[0]:.3e} vanish")
    return AffinePoint(z[1:] / z[0], w[1:] / w[0])


def standard_point(tau: float, n: int) -> AffinePoint:
    """Affine image of the standard point: Z = -tau En, W = tau En"""
    Z = np.zeros(n, dtype=complex)
    W = np.zeros(n, dtype=complex)
    Z[-1], W[-1] = -tau, tau
    return AffinePoint(Z, W)


def exhaustion(p: AffinePoint) -> ExhaustionData:
    A = float((1.0 + np.vdot(p.Z, p.Z).real) * (1.0 + np.vdot(p.W, p.W).real))
    B = complex(1.0 + p.Z @ p.W)
    return ExhaustionData(A, B, A / abs(B) ** 2)


def stenzel_form_general(p: AffinePoint) -> StenzelForm:
    """G at an arbitrary affine point, assembled from A, B and f' = N^(-1/2)"""
    n = p.n
    Z, W = p.Z, p.W
    data = exhaustion(p)
    A, B, N = data.A, data.B, data.Ncal
    zz = 1.0 + np.vdot(Z, Z).real
    ww = 1.0 + np.vdot(W, W).real

    ddA = np.block([
        [ww * np.eye(n), np.outer(np.conj(Z), W)],
        [np.outer(np.conj(W), Z), zz * np.eye(n)],
    ])
    dA = np.concatenate([ww * np.conj(Z), zz * np.conj(W)])
    dB = np.concatenate([W, Z])
    dN = dA - (A / B) * dB

    f1 = N ** -0.5
    f2 = -0.5 * N ** -1.5
    B2 = abs(B) ** 2
    G = (f1 / B2) * (
        ddA
        - np.outer(dA, np.conj(dA)) / A
        + (1.0 / A + f2 / (f1 * B2)) * np.outer(dN, np.conj(dN))
    )
    return StenzelForm(G)


def stenzel_form_standard(tau: float, n: int) -> StenzelForm:
    """Closed form of G at Z = -tau En, W = tau En"""
    if not 0.0 <= tau < DEFAULTS.tau_cap:
        raise TauOutOfRange(f"tau={tau} outside [0, {DEFAULTS.tau_cap}]")
    t2 = tau ** 2
    q = 2.0 * t2 / (1.0 - t2) ** 2
    M = np.zeros((n, n))
    M[-1, -1] = 1.0
    correction = np.block([[(q - t2) * M, -q * M], [-q * M, (q - t2) * M]])
    G = ((1.0 + t2) * np.eye(2 * n) + correction) / (1.0 - t2 ** 2)
    return StenzelForm(G.astype(complex), tau)


def _pairing(G: np.ndarray, v: ArrayLike, w: ArrayLike) -> complex:
    v = as_complex_vector(v)
    w = as_complex_vector(w)
    if v.shape[0] != G.shape[0] or w.shape[0] != G.shape[0]:
        raise DimensionMismatch(f"Vectors of length {v.shape[0]}, {w.shape[0]} against G of size {G.shape[0]}")
    return complex(np.conj(v) @ G @ w)


def metric_pair(G, v: ArrayLike, w: ArrayLike) -> float:
    """g(v, w) = 2 Re(conj(v) G w^T)"""
    G = G.G if isinstance(G, StenzelForm) else np.asarray(G)
    return 2.0 * _pairing(G, v, w).real


def kahler_pair(G, v: ArrayLike, w: ArrayLike) -> float:
    """Omega(v, w) = -2 Im(conj(v) G w^T)"""
    G = G.G if isinstance(G, StenzelForm) else np.asarray(G)
    return -2.0 * _pairing(G, v, w).imag


def kahler_matrix(G, rows: np.ndarray) -> np.ndarray:
    """Omega evaluated on every pair of rows"""
    G = G.G if isinstance(G, StenzelForm) else np.asarray(G)
    rows = np.asarray(rows, dtype=complex)
    if rows.shape[1] != G.shape[0]:
        raise DimensionMismatch(f"Rows of length {rows.shape[1]} against G of size {G.shape[0]}")
    return -2.0 * np.imag(np.conj(rows) @ G @ rows.T)


def closedness_defect(p: AffinePoint, step: float = 1e-4) -> float:
    """Finite-difference check that the form with coefficients G is closed

    Closedness of sum G_ab dx_a ^ dconj(x_b) is d_c G_ab = d_a G_cb for holomorphic
    derivatives d_c = (d/dRe - i d/dIm) / 2 in the coordinates x = (Z, W).
    """
    x0 = np.concatenate([p.Z, p.W])
    n = p.n
    size = 2 * n

    def G_at(x):
        return stenzel_form_general(AffinePoint(x[:n], x[n:])).G

    derivative = np.empty((size, size, size), dtype=complex)
    for c in range(size):
        shift = np.zeros(size, dtype=complex)
        shift[c] = step
        d_re = (G_at(x0 + shift) - G_at(x0 - shift)) / (2 * step)
        d_im = (G_at(x0 + 1j * shift) - G_at(x0 - 1j * shift)) / (2 * step)
        derivative[c] = 0.5 * (d_re - 1j * d_im)
    # derivative[c, a, b] = d_c G_ab
    return float(np.max(np.abs(derivative - derivative.transpose(1, 0, 2))))


__all__ = [
    "AffinePoint",
    "ExhaustionData",
    "StenzelForm",
    "tau_of",
    "phi_hat",
    "affine_chart",
    "standard_point",
    "exhaustion",
    "stenzel_form_general",
    "stenzel_form_standard",
    "metric_pair",
    "kahler_pair",
    "kahler_matrix",
    "closedness_defect",
]
