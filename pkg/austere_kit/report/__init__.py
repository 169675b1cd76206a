"""
Configuration, run orchestration and report output
"""

from .config import RunConfig, load_config, parse_config
from .runner import EXIT_ERROR, EXIT_INCONCLUSIVE, EXIT_PASS, EXIT_VIOLATION, RunResult, run
from .acceptance import verify_all
from .writers import render, to_json, write_plot, write_report

__all__ = [
    "RunConfig",
    "parse_config",
    "load_config",
    "RunResult",
    "run",
    "verify_all",
    "to_json",
    "render",
    "write_report",
    "write_plot",
    "EXIT_PASS",
    "EXIT_VIOLATION",
    "EXIT_ERROR",
    "EXIT_INCONCLUSIVE",
]
