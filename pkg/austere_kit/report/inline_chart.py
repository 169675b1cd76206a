"""
Targets written inline in a configuration file
"""

import logging
from typing import Optional, Tuple

from ..catalog import CatalogEntry, get_entry
from ..catalog.entries import spec_from_chart
from ..core.errors import ConfigError
from ..core.immersion import SubmanifoldSpec
from ..core.symbolic_chart import SymbolicChart
from .config import InlineChart, RunConfig

logger = logging.getLogger(__name__)


def chart_from_config(chart: InlineChart, k: Optional[int] = None, n: Optional[int] = None) -> SubmanifoldSpec:
    """Compile an inline polynomial chart

    The parameter count comes from the domain and n from the number of components.
    Explicit k and n in the file must agree with them.
    """
    dim = len(chart.domain)
    size = len(chart.expression) - 1
    if k is not None and k != dim:
        raise ConfigError(f"k={k} but the domain has {dim} intervals", field="k")
    if n is not None and n != size:
        raise ConfigError(f"n={n} but the chart has {size + 1} components", field="n")
    try:
        compiled = SymbolicChart(chart.expression, dim, normalize=chart.normalize)
    except (SyntaxError, TypeError, ValueError) as e:
        raise ConfigError(f"cannot parse chart: {e}", field="target.chart.expression") from e
    if not compiled.is_polynomial():
        raise ConfigError("inline charts must be polynomial in u1..uk", field="target.chart.expression")
    logger.info(f"Compiled inline chart {chart.label} (k={dim}, n={size})")
    return spec_from_chart(compiled, chart.label, chart.domain)


def resolve_target(config: RunConfig) -> Tuple[SubmanifoldSpec, Optional[CatalogEntry]]:
    """Submanifold named by the configuration, with its catalog entry when there is one"""
    target = config.target
    if target.chart is not None:
        return chart_from_config(target.chart, config.k, config.n), None

    catalog_entry = get_entry(target.catalog, **target.params)
    spec = catalog_entry.spec
    if config.k is not None and config.k != spec.k:
        raise ConfigError(f"catalog entry {target.catalog} has k={spec.k}, config says {config.k}", field="k")
    if config.n is not None and config.n != spec.n:
        raise ConfigError(f"catalog entry {target.catalog} has n={spec.n}, config says {config.n}", field="n")
    return spec, catalog_entry


__all__ = ["chart_from_config", "resolve_target"]
