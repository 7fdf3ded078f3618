#!/usr/bin/env python3
"""
Entry point for the qheisenberg command line
"""

import os
import sys

# Project root on the path so the src package resolves from any working directory
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
