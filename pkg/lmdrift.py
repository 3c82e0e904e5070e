#!/usr/bin/env python3
"""Run the lm-drift command line from a source checkout: python lmdrift.py <command> ..."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "src"))

from lm_drift.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
