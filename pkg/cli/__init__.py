"""
austere-kit CLI Package
"""

from .austere_cli import AustereCLI, main

__all__ = ["AustereCLI", "main"]
