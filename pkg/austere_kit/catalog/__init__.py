"""
Catalog of closed-form submanifolds
"""

from .registry import CatalogEntry, entry, get_entry, list_entries, suite_names
from .entries import (
    geodesic_and_circle,
    holomorphic_conic,
    linear_subspace,
    minimal_torus,
    nonminimal_torus,
    real_projective_plane,
    torus_mean_curvature,
)

__all__ = [
    "CatalogEntry",
    "entry",
    "get_entry",
    "list_entries",
    "suite_names",
    "linear_subspace",
    "real_projective_plane",
    "holomorphic_conic",
    "geodesic_and_circle",
    "nonminimal_torus",
    "minimal_torus",
    "torus_mean_curvature",
]
