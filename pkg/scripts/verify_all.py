#!/usr/bin/env python3
"""Run the full verification suite and print the tier-by-tier report.

Equivalent to `quatherm --format text verify --suite all --timings`.
"""

import sys

from quatherm.cli import main

if __name__ == "__main__":
    sys.exit(main(["--format", "text", "verify", "--suite", "all", "--timings"]))
