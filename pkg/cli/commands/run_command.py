"""
Run Command - Execute the checks described by a run configuration
"""

import logging

from austere_kit.core.errors import AustereError
from austere_kit.report import load_config, run

from .base_command import BaseCommand

logger = logging.getLogger(__name__)


class RunCommand(BaseCommand):
    """Run the configured checks against one target"""

    def execute(self, args) -> int:
        """Execute run command"""
        try:
            config = load_config(args.config).with_overrides(
                seed=args.seed,
                tol_austere=args.tol_austere,
                tol_lagrangian=args.tol_lagrangian,
                fmt=args.format,
                plot=args.plot,
                timing=True if args.timing else None,
            )
            target = config.target.catalog or config.target.chart.label
            self.print_info(f"Running {', '.join(config.checks)} on {target} (seed {config.sampling.seed})")
            result = run(config)
        except AustereError as e:
            logger.debug("Run failed", exc_info=True)
            return self.fail(e)

        document = result.document
        if document["verdict"] is not None:
            summary = document["summary"]
            self.print_info(f"Verdict: {document['verdict']} (max |R_j| {summary['max_residual']:.3e}, "
                            f"max Lagrangian defect {summary['max_lagrangian_defect']:.3e})")
        if document["classification"] is not None:
            self.print_info(f"Surface branch: {document['classification']['label']}")
        for flag in document["flags"]:
            self.print_warning(f"Flag raised: {flag}")

        # partial reports are still written for violations and inconclusive runs
        self.save(document, config.output.path, config.output.format, config.output.plot)
        self.print_outcome(result.exit_code, target)
        return result.exit_code
