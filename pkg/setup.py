"""
Build entry point for pip; the package manifest lives in setup_cli.py
"""

import runpy
from pathlib import Path

runpy.run_path(str(Path(__file__).with_name("setup_cli.py")), run_name="__main__")
