#!/usr/bin/env python3
"""
austere-kit CLI - Command line tool for austerity and special Lagrangian checks
"""

import argparse
import logging
import sys
from typing import Optional

from austere_kit import __version__

try:
    from .commands import CatalogCommand, RunCommand, VerifyAllCommand
except ImportError:
    # Fallback for direct execution
    from commands import CatalogCommand, RunCommand, VerifyAllCommand

logger = logging.getLogger(__name__)


class AustereCLI:
    """Main CLI application for austere-kit"""

    def __init__(self):
        self.parser = self._create_parser()
        self.commands = {
            'run': RunCommand(),
            'catalog': CatalogCommand(),
            'verify-all': VerifyAllCommand(),
        }

    def _create_parser(self) -> argparse.ArgumentParser:
        """Create the main argument parser"""
        parser = argparse.ArgumentParser(
            prog='austere-kit',
            description='Numerical checks for austere submanifolds of CP^n and their special Lagrangian normal bundles',
            formatter_class=argparse.RawDescriptionHelpFormatter,
            epilog="""
Examples:
  austere-kit run configs/rp2.yaml
  austere-kit run configs/small_circle.yaml --seed 7 --format csv
  austere-kit catalog list
  austere-kit catalog show conic
  austere-kit verify-all --output verify.json

Exit codes:
  0  all requested checks passed
  1  definite violation
  2  configuration or numerical-degeneracy error
  3  inconclusive (rank-ambiguous samples)
            """
        )

        parser.add_argument(
            '--version',
            action='version',
            version=f'austere-kit {__version__}'
        )
        parser.add_argument(
            '--verbose', '-v',
            action='store_true',
            help='Enable debug logging'
        )

        subparsers = parser.add_subparsers(
            dest='command',
            help='Available commands',
            metavar='COMMAND'
        )

        # Run command
        run_parser = subparsers.add_parser(
            'run',
            help='Run the checks described by a configuration file'
        )
        run_parser.add_argument('config', help='Path to a YAML run configuration')
        run_parser.add_argument(
            '--seed',
            type=int,
            help='Override sampling.seed'
        )
        run_parser.add_argument(
            '--tol-austere',
            type=float,
            help='Override tolerances.tol_austere'
        )
        run_parser.add_argument(
            '--tol-lagrangian',
            type=float,
            help='Override tolerances.tol_lagrangian'
        )
        run_parser.add_argument(
            '--format',
            choices=['json', 'csv'],
            help='Override output.format'
        )
        run_parser.add_argument(
            '--plot',
            metavar='SVG',
            help='Write defect and phase curves against tau to this SVG file'
        )
        run_parser.add_argument(
            '--timing',
            action='store_true',
            help='Record wall-clock time in the report (breaks byte-identical output)'
        )

        # Catalog command
        catalog_parser = subparsers.add_parser(
            'catalog',
            help='Inspect catalog entries'
        )
        catalog_parser.add_argument(
            'action',
            nargs='?',
            default='list',
            choices=['list', 'show'],
            help='Action to perform'
        )
        catalog_parser.add_argument('name', nargs='?', help='Entry name for show')
        catalog_parser.add_argument(
            '--json',
            action='store_true',
            help='Print the listing as JSON'
        )

        # Verify-all command
        verify_parser = subparsers.add_parser(
            'verify-all',
            help='Run the full acceptance suite'
        )
        verify_parser.add_argument(
            '--seed',
            type=int,
            default=0,
            help='Seed for every random section'
        )
        verify_parser.add_argument(
            '--output',
            '-o',
            help='Report path (stdout when omitted)'
        )
        verify_parser.add_argument(
            '--format',
            choices=['json', 'csv'],
            default='json',
            help='Report format'
        )

        return parser

    def run(self, args: Optional[list] = None) -> int:
        """Run the CLI application"""
        try:
            parsed_args = self.parser.parse_args(args)
            logging.basicConfig(
                level=logging.DEBUG if parsed_args.verbose else logging.WARNING,
                format='%(asctime)s %(levelname)s %(name)s: %(message)s',
            )

            if not parsed_args.command:
                self.parser.print_help()
                return 0

            command = self.commands.get(parsed_args.command)
            if not command:
                print(f"Error: Unknown command '{parsed_args.command}'", file=sys.stderr)
                return 2

            return command.execute(parsed_args)

        except KeyboardInterrupt:
            print("\nOperation cancelled by user", file=sys.stderr)
            return 130
        except Exception as e:
            logger.debug("Unhandled error", exc_info=True)
            print(f"Error: {str(e)}", file=sys.stderr)
            return 2


def main():
    """Main entry point for CLI"""
    cli = AustereCLI()
    sys.exit(cli.run())


if __name__ == '__main__':
    main()
