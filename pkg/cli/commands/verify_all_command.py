"""
Verify-All Command - Run the full acceptance suite on a fixed seed
"""

import logging

from austere_kit.core.errors import AustereError
from austere_kit.report import verify_all

from .base_command import BaseCommand

logger = logging.getLogger(__name__)


class VerifyAllCommand(BaseCommand):
    """Run every acceptance section and write one combined report"""

    def execute(self, args) -> int:
        """Execute verify-all command"""
        self.print_info(f"Running acceptance suite with seed {args.seed}")
        try:
            result = verify_all(args.seed)
        except AustereError as e:
            logger.debug("verify-all failed", exc_info=True)
            return self.fail(e)

        for name, section in result.document["sections"].items():
            if section["passed"]:
                self.print_success(f"{name}")
            else:
                self.print_error(f"{name}")
        self.save(result.document, args.output, args.format)
        self.print_outcome(result.exit_code, "verify-all")
        return result.exit_code
