"""
Base Command Class
"""

import logging
import sys
from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

from austere_kit.core.errors import AustereError, ConfigError, NumericalDegeneracy
from austere_kit.report import EXIT_ERROR, EXIT_INCONCLUSIVE, EXIT_PASS, EXIT_VIOLATION, render, write_plot, write_report

logger = logging.getLogger(__name__)


class BaseCommand(ABC):
    """Base class for all CLI commands"""

    @abstractmethod
    def execute(self, args) -> int:
        """Execute the command"""
        pass

    def fail(self, error: AustereError) -> int:
        """Report a configuration or degeneracy error and return its exit code"""
        if isinstance(error, ConfigError):
            self.print_error(f"Configuration error: {error}")
        elif isinstance(error, NumericalDegeneracy):
            self.print_error(f"Numerical degeneracy ({type(error).__name__}): {error}")
        else:
            self.print_error(f"{type(error).__name__}: {error}")
        return EXIT_ERROR

    def save(self, document: Dict[str, Any], path: Optional[str], fmt: str, plot: Optional[str] = None) -> None:
        """Write the report, or print it to stdout when no path is given"""
        if path:
            write_report(document, path, fmt)
            self.print_info(f"Report written to {path}")
        else:
            print(render(document, fmt), end="")
        if plot:
            write_plot(document, plot)
            self.print_info(f"Plot written to {plot}")

    def print_outcome(self, code: int, subject: str) -> None:
        if code == EXIT_PASS:
            self.print_success(f"{subject}: all requested checks passed")
        elif code == EXIT_VIOLATION:
            self.print_error(f"{subject}: definite violation")
        elif code == EXIT_INCONCLUSIVE:
            self.print_warning(f"{subject}: inconclusive")

    def print_success(self, message: str):
        """Print success message to stderr, keeping stdout for reports"""
        print(f"✅ {message}", file=sys.stderr)

    def print_error(self, message: str):
        """Print error message"""
        print(f"❌ {message}", file=sys.stderr)

    def print_warning(self, message: str):
        """Print warning message"""
        print(f"⚠️  {message}", file=sys.stderr)

    def print_info(self, message: str):
        """Print info message"""
        print(f"ℹ️  {message}", file=sys.stderr)
