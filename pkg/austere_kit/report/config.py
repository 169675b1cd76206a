"""
Run configuration - YAML documents validated with pydantic
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..core.errors import ConfigError

logger = logging.getLogger(__name__)

CHECK_NAMES = ("lagrangian", "austerity", "detS_crosscheck", "lemma2", "classify")
EXPECTATIONS = ("austere", "not_austere", "geodesic", "totally_geodesic", "holomorphic", "catalog")


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class InlineChart(StrictModel):
    """Polynomial chart in u1..uk with I as the imaginary unit"""

    expression: List[str] = Field(min_length=2)
    normalize: bool = True
    domain: List[Tuple[float, float]] = Field(min_length=1)
    label: str = "inline"

    @field_validator("domain")
    @classmethod
    def _ordered(cls, value):
        for low, high in value:
            if not low < high:
                raise ValueError(f"domain interval [{low}, {high}] is empty")
        return value


class Target(StrictModel):
    catalog: Optional[str] = None
    params: Dict[str, Any] = Field(default_factory=dict)
    chart: Optional[InlineChart] = None

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.catalog is None) == (self.chart is None):
            raise ValueError("give exactly one of 'catalog' or 'chart'")
        if self.chart is not None and self.params:
            raise ValueError("'params' only applies to catalog targets")
        return self


class Sampling(StrictModel):
    grid: Optional[List[int]] = None
    normals: int = Field(default=8, ge=1)
    random_normals: int = Field(default=4, ge=0)
    taus: List[float] = Field(default_factory=lambda: [0.1, 0.5, 0.9], min_length=1)
    seed: int = 0
    step: float = Field(default=1e-4, gt=0)
    richardson: bool = False
    analytic: bool = False
    workers: int = Field(default=1, ge=1)

    @field_validator("grid")
    @classmethod
    def _grid_counts(cls, value):
        if value is not None and any(count < 2 for count in value):
            raise ValueError("grid counts must be at least 2")
        return value

    @field_validator("taus")
    @classmethod
    def _tau_range(cls, value):
        for tau in value:
            if not 0.0 <= tau < 1.0:
                raise ValueError(f"tau={tau} outside [0, 1)")
        return value


class TolerancesConfig(StrictModel):
    tol_austere: Optional[float] = Field(default=None, gt=0)
    tol_lagrangian: Optional[float] = Field(default=None, gt=0)
    allow_rank_ambiguous: bool = False


class Output(StrictModel):
    path: Optional[str] = None
    format: Literal["json", "csv"] = "json"
    plot: Optional[str] = None
    timing: bool = False


class RunConfig(StrictModel):
    """Validated run configuration"""

    target: Target
    n: Optional[int] = Field(default=None, ge=1)
    k: Optional[int] = Field(default=None, ge=1)
    sampling: Sampling = Field(default_factory=Sampling)
    tolerances: TolerancesConfig = Field(default_factory=TolerancesConfig)
    checks: List[str] = Field(default_factory=lambda: ["lagrangian", "austerity", "detS_crosscheck"])
    expect: Optional[str] = None
    output: Output = Field(default_factory=Output)

    @field_validator("checks")
    @classmethod
    def _known_checks(cls, value):
        unknown = sorted(set(value) - set(CHECK_NAMES))
        if unknown:
            raise ValueError(f"unknown checks {unknown}; choose from {list(CHECK_NAMES)}")
        return sorted(set(value), key=CHECK_NAMES.index)

    @field_validator("expect")
    @classmethod
    def _known_expectation(cls, value):
        if value is not None and value not in EXPECTATIONS:
            raise ValueError(f"expect must be one of {list(EXPECTATIONS)}")
        return value

    def echo(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")

    def with_overrides(self, seed: Optional[int] = None, tol_austere: Optional[float] = None,
                       tol_lagrangian: Optional[float] = None, fmt: Optional[str] = None,
                       plot: Optional[str] = None, timing: Optional[bool] = None) -> "RunConfig":
        """Apply command-line flags on top of the file values"""
        data = self.echo()
        if seed is not None:
            data["sampling"]["seed"] = seed
        if tol_austere is not None:
            data["tolerances"]["tol_austere"] = tol_austere
        if tol_lagrangian is not None:
            data["tolerances"]["tol_lagrangian"] = tol_lagrangian
        if fmt is not None:
            data["output"]["format"] = fmt
        if plot is not None:
            data["output"]["plot"] = plot
        if timing is not None:
            data["output"]["timing"] = timing
        return validate_config(data)


def _locate(node, path: Sequence[Union[str, int]]) -> Optional[int]:
    """1-based line of the deepest YAML node reachable along ``path``"""
    line = None
    for key in path:
        if isinstance(node, yaml.MappingNode):
            match = next((pair for pair in node.value if pair[0].value == str(key)), None)
            if match is None:
                break
            line = match[0].start_mark.line + 1
            node = match[1]
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
            node = node.value[key]
            line = node.start_mark.line + 1
        else:
            break
    return line


def validate_config(data: Any, root_node=None) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a mapping", line=1 if root_node is not None else None)
    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        loc = [part for part in first["loc"] if not (isinstance(part, str) and part.startswith("function-"))]
        field = ".".join(str(part) for part in loc) or None
        line = _locate(root_node, loc) if root_node is not None else None
        raise ConfigError(first["msg"], field=field, line=line) from e


def parse_config(text: str) -> RunConfig:
    """Parse and validate YAML configuration text"""
    try:
        root = yaml.compose(text)
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        raise ConfigError(f"invalid YAML: {e}", line=mark.line + 1 if mark else None) from e
    config = validate_config(data, root)
    logger.debug(f"Parsed configuration for target {config.target.catalog or config.target.chart.label}")
    return config


def load_config(path: Union[str, Path]) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigError(f"cannot read {path}: {e}") from e
    return parse_config(text)


__all__ = [
    "RunConfig",
    "Target",
    "InlineChart",
    "Sampling",
    "TolerancesConfig",
    "Output",
    "CHECK_NAMES",
    "parse_config",
    "load_config",
    "validate_config",
]
