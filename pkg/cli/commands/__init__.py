"""
CLI Commands Package
"""

try:
    from .run_command import RunCommand
    from .catalog_command import CatalogCommand
    from .verify_all_command import VerifyAllCommand
except ImportError:
    from run_command import RunCommand
    from catalog_command import CatalogCommand
    from verify_all_command import VerifyAllCommand

__all__ = [
    "RunCommand",
    "CatalogCommand",
    "VerifyAllCommand",
]
