#!/usr/bin/env python3
"""Reproduce the degree <= M survey verdict from the command line.

Usage: python3 scripts/run_verify.py [M] [cache-dir]
Defaults: M = 7, cache from PERMDEG_CACHE or none.
"""

import os
import sys

from permdeg.cli import run


def main() -> int:
    max_degree = sys.argv[1] if len(sys.argv) > 1 else "7"
    argv = ["verify", "--max", max_degree]
    cache = sys.argv[2] if len(sys.argv) > 2 else os.environ.get("PERMDEG_CACHE")
    if cache:
        argv += ["--cache", cache]
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
