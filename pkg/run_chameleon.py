#!/usr/bin/env python3
"""
EPR-chameleon simulator

This is the entry point script that properly sets up paths and runs the CLI.

Usage:
  python run_chameleon.py run --a 0 --b 60deg --n-total 1000000 --seed 7
  python run_chameleon.py bell --a 0 --b 2pi/3 --c pi/3
"""

import sys
from pathlib import Path
src_dir = Path(__file__).parent / "src"
sys.path.insert(0, str(src_dir))

from chameleon.cli import cli

if __name__ == '__main__':
    cli()
