"""
Core numerical modules
"""

from . import cpn_core, immersion, slag_check, stenzel_metric
from .errors import AustereError, ConfigError, NumericalDegeneracy, RankAmbiguous

__all__ = [
    "cpn_core",
    "immersion",
    "stenzel_metric",
    "slag_check",
    "AustereError",
    "ConfigError",
    "NumericalDegeneracy",
    "RankAmbiguous",
]
