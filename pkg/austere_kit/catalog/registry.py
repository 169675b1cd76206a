"""
Catalog registry - closed-form submanifolds addressable by name
"""

import inspect
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from ..core.errors import ConfigError
from ..core.immersion import LocalGeometry, SubmanifoldSpec
from ..core.slag_check import AUSTERE, NOT_AUSTERE

logger = logging.getLogger(__name__)

EXPECTED_VERDICTS = ("austere", "not_austere", "geodesic", "totally_geodesic", "holomorphic")


@dataclass(frozen=True)
class CatalogEntry:
    """A submanifold with its expected verdict and optional closed-form oracles

    ``analytic_II(u, nu)`` returns the scalar second fundamental form along nu in the
    orthonormal basis obtained by Gram-Schmidt of the horizontal chart partials.
    """

    name: str
    spec: SubmanifoldSpec
    expected_verdict: Optional[str]
    provenance_note: str
    expected_branch: Optional[str] = None
    analytic_II: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.expected_verdict is not None and self.expected_verdict not in EXPECTED_VERDICTS:
            raise ValueError(f"Unknown expected verdict {self.expected_verdict!r}")

    @property
    def expected_austerity(self) -> Optional[str]:
        """Expected output of is_austere"""
        if self.expected_verdict is None:
            return None
        return NOT_AUSTERE if self.expected_verdict == "not_austere" else AUSTERE

    @property
    def has_analytic_frame(self) -> bool:
        return self.spec.exact_jet is not None

    def analytic_frame(self, u, nu):
        """Adapted frame from the exact jet of the chart"""
        return LocalGeometry(self.spec, u, analytic=True).frame(nu)


class RegisteredEntry:
    """Constructor registered under a catalog name"""

    def __init__(self, name: str, handler: Callable[..., CatalogEntry], metadata: Dict[str, Any] = None):
        self.name = name
        self.handler = handler
        self.metadata = metadata or {}
        self.signature = inspect.signature(handler)

    def build(self, **params) -> CatalogEntry:
        try:
            self.signature.bind(**params)
        except TypeError as e:
            raise ConfigError(f"Bad parameters for catalog entry '{self.name}': {e}", field="target.params")
        return self.handler(**params)

    def info(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "parameters": {
                p.name: p.default for p in self.signature.parameters.values()
                if p.default is not inspect.Parameter.empty
            },
            **self.metadata,
        }


_REGISTRY: Dict[str, RegisteredEntry] = {}


def entry(name: str, description: str = None, **metadata):
    """Decorator registering a catalog constructor under ``name``"""
    def decorator(func):
        if description:
            metadata["description"] = description
        _REGISTRY[name] = RegisteredEntry(name, func, dict(metadata))
        return func
    return decorator


def get_entry(name: str, **params) -> CatalogEntry:
    if name not in _REGISTRY:
        raise ConfigError(f"Unknown catalog entry '{name}' (known: {', '.join(sorted(_REGISTRY))})",
                          field="target.catalog")
    logger.debug(f"Building catalog entry {name} with {params}")
    return _REGISTRY[name].build(**params)


def list_entries() -> List[Dict[str, Any]]:
    return [_REGISTRY[name].info() for name in sorted(_REGISTRY)]


def suite_names() -> List[str]:
    """Entries that take part in the acceptance suite"""
    return [name for name in sorted(_REGISTRY) if _REGISTRY[name].metadata.get("suite", True)]


__all__ = ["CatalogEntry", "RegisteredEntry", "entry", "get_entry", "list_entries", "suite_names", "EXPECTED_VERDICTS"]
