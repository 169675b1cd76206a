"""
austere-kit - numerical checks of the special Lagrangian normal bundle construction in CP^n
"""

__version__ = "1.0.0"

__all__ = ["__version__"]
