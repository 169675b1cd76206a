"""
Run orchestration - resolve a target, execute the requested checks and assemble the report
"""

import logging
import platform
import time
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional

import numpy as np
import scipy
import sympy

from .. import __version__
from ..catalog import CatalogEntry
from ..core.errors import ConfigError
from ..core.immersion import SamplingPlan, SubmanifoldSpec
from ..core.slag_check import (
    AUSTERE,
    INCONCLUSIVE,
    NOT_AUSTERE,
    AusterityReport,
    Checks,
    SampleRecord,
    SurfaceClassification,
    Tolerances,
    is_austere,
    surface_classify,
)
from .config import RunConfig
from .inline_chart import resolve_target

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "austere-report-v1"

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_ERROR = 2
EXIT_INCONCLUSIVE = 3

LAGRANGIAN_VIOLATION = "LAGRANGIAN_VIOLATION"
DETS_MISMATCH = "DETS_MISMATCH"
CLIPPED_DET_MISMATCH = "CLIPPED_DET_MISMATCH"
EXPECTATION_FAILED = "EXPECTATION_FAILED"

# expectation -> verdict of is_austere
_VERDICT_FOR = {
    "austere": AUSTERE,
    "geodesic": AUSTERE,
    "totally_geodesic": AUSTERE,
    "holomorphic": AUSTERE,
    "not_austere": NOT_AUSTERE,
}
_BRANCHES = ("holomorphic", "totally_geodesic", "not_austere")


@dataclass
class RunResult:
    document: Dict[str, Any]
    exit_code: int


def environment() -> Dict[str, str]:
    return {
        "austere_kit": __version__,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "sympy": sympy.__version__,
        "python": platform.python_version(),
    }


def number(value) -> Optional[float]:
    """Plain float for the report, None for missing or non-finite values"""
    if value is None:
        return None
    value = float(value)
    return value if np.isfinite(value) else None


def _largest(values) -> Optional[float]:
    values = list(values)
    return number(max(values)) if values else None


def record_row(record: SampleRecord) -> Dict[str, Any]:
    taus = sorted(set(record.lagrangian_defect) | set(record.detS_error) | set(record.phase))
    return {
        "index": record.index,
        "u": [float(x) for x in record.u],
        "nu": [[float(c.real), float(c.imag)] for c in record.nu],
        "theta": number(record.theta),
        "residuals": [float(r) for r in record.residuals],
        "trace": number(record.trace),
        "defect": _largest(record.lagrangian_defect.values()),
        "detS_err": _largest(record.detS_error.values()),
        "lemma2_err": number(record.lemma2_error),
        "status": record.status,
        "per_tau": [
            {
                "tau": float(tau),
                "defect": number(record.lagrangian_defect.get(tau)),
                "detS_err": number(record.detS_error.get(tau)),
                "phase": number(record.phase.get(tau)),
            }
            for tau in taus
        ],
    }


def summary(report: AusterityReport) -> Dict[str, Any]:
    return {
        "sample_count": len(report.samples),
        "scored_count": len(report.scored),
        "ambiguous_points": report.ambiguous_points,
        "max_residual": number(report.max_residual),
        "max_trace": number(report.max_trace),
        "max_lagrangian_defect": number(report.max_lagrangian_defect),
        "max_detS_error": number(report.max_detS_error),
        "max_lemma2_error": number(report.max_lemma2_error),
        "max_mean_curvature": number(report.max_mean_curvature),
    }


def classification_dict(result: SurfaceClassification) -> Dict[str, Any]:
    return {
        "label": result.label,
        "rank_H": list(result.rank_H),
        "max_II": number(result.max_II),
        "max_residual": number(result.max_residual),
        "max_highest_degree": number(result.max_highest_degree),
    }


def plan_from_config(config: RunConfig, spec: SubmanifoldSpec) -> SamplingPlan:
    sampling = config.sampling
    grid = tuple(sampling.grid) if sampling.grid else SamplingPlan.default_grid(spec.k)
    if len(grid) != spec.k:
        raise ConfigError(f"grid has {len(grid)} counts for k={spec.k}", field="sampling.grid")
    if sampling.analytic and spec.exact_jet is None:
        raise ConfigError(f"{spec.label} has no exact jet", field="sampling.analytic")
    return SamplingPlan(
        grid=grid,
        normals=sampling.normals,
        random_normals=sampling.random_normals,
        taus=tuple(sampling.taus),
        seed=sampling.seed,
        step=sampling.step,
        richardson=sampling.richardson,
        analytic=sampling.analytic,
        workers=sampling.workers,
    )


def checks_from_config(config: RunConfig) -> Checks:
    selected = set(config.checks)
    return Checks(
        lagrangian="lagrangian" in selected,
        austerity="austerity" in selected,
        detS_crosscheck="detS_crosscheck" in selected,
        lemma2="lemma2" in selected,
    )


def expected_verdict(config: RunConfig, catalog_entry: Optional[CatalogEntry]) -> Optional[str]:
    if config.expect != "catalog":
        return config.expect
    if catalog_entry is None:
        raise ConfigError("expect: catalog needs a catalog target", field="expect")
    return catalog_entry.expected_verdict


def violation_flags(config: RunConfig, report: Optional[AusterityReport],
                    classification: Optional[SurfaceClassification], expected: Optional[str]) -> List[str]:
    flags = []
    if report is not None:
        tols = report.tolerances
        if "lagrangian" in config.checks and not report.lagrangian_ok:
            # the embedded normal bundle is Lagrangian for every submanifold; a defect means a bug
            logger.error(f"Lagrangian defect {report.max_lagrangian_defect:.3e} exceeds {tols.tol_lagrangian:.1e}")
            flags.append(LAGRANGIAN_VIOLATION)
        if "detS_crosscheck" in config.checks and report.max_detS_error > tols.tol_detS:
            flags.append(DETS_MISMATCH)
        if "lemma2" in config.checks and report.max_lemma2_error > tols.tol_detS:
            flags.append(CLIPPED_DET_MISMATCH)
        if expected is not None and report.verdict != INCONCLUSIVE and _VERDICT_FOR[expected] != report.verdict:
            flags.append(EXPECTATION_FAILED)
    if classification is not None and expected in _BRANCHES and classification.label != INCONCLUSIVE \
            and classification.label != expected and EXPECTATION_FAILED not in flags:
        flags.append(EXPECTATION_FAILED)
    return flags


def exit_code_for(flags: List[str], inconclusive: bool) -> int:
    if flags:
        return EXIT_VIOLATION
    if inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def run(config: RunConfig) -> RunResult:
    """Execute the checks named by ``config``

    Configuration and numerical-degeneracy problems surface as AustereError; the caller maps
    them to exit code 2.
    """
    started = time.perf_counter()
    spec, catalog_entry = resolve_target(config)
    plan = plan_from_config(config, spec)
    tols = Tolerances.for_plan(
        plan,
        tol_austere=config.tolerances.tol_austere,
        tol_lagrangian=config.tolerances.tol_lagrangian,
        allow_rank_ambiguous=config.tolerances.allow_rank_ambiguous,
    )
    checks = checks_from_config(config)
    expected = expected_verdict(config, catalog_entry)

    report = None
    if checks.lagrangian or checks.austerity or checks.detS_crosscheck or checks.lemma2:
        report = is_austere(spec, plan, tols, checks)
    classification = None
    if "classify" in config.checks:
        classification = surface_classify(spec, plan, tols.tol_austere)

    flags = violation_flags(config, report, classification, expected)
    inconclusive = (report is not None and report.verdict == INCONCLUSIVE) or \
        (classification is not None and classification.label == INCONCLUSIVE)
    code = exit_code_for(flags, inconclusive)

    document = {
        "schema_version": SCHEMA_VERSION,
        "versions": environment(),
        "config": config.echo(),
        "seed": plan.seed,
        "target": {
            "label": spec.label,
            "k": spec.k,
            "n": spec.n,
            "catalog": catalog_entry.name if catalog_entry else None,
            "provenance": catalog_entry.provenance_note if catalog_entry else None,
            "expected": expected,
        },
        "tolerances": asdict(tols),
        "verdict": report.verdict if report is not None else None,
        "classification": classification_dict(classification) if classification is not None else None,
        "summary": summary(report) if report is not None else None,
        "flags": flags,
        "exit_code": code,
        "samples": [record_row(r) for r in report.samples] if report is not None else [],
    }
    elapsed = time.perf_counter() - started
    logger.info(f"{spec.label}: finished in {elapsed:.2f}s with exit code {code}")
    if config.output.timing:
        document["wall_clock_seconds"] = elapsed
    return RunResult(document, code)


__all__ = [
    "SCHEMA_VERSION",
    "EXIT_PASS",
    "EXIT_VIOLATION",
    "EXIT_ERROR",
    "EXIT_INCONCLUSIVE",
    "LAGRANGIAN_VIOLATION",
    "DETS_MISMATCH",
    "CLIPPED_DET_MISMATCH",
    "EXPECTATION_FAILED",
    "RunResult",
    "run",
    "environment",
    "record_row",
    "summary",
    "plan_from_config",
    "checks_from_config",
    "expected_verdict",
    "violation_flags",
    "exit_code_for",
]
