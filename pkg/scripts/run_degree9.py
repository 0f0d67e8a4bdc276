#!/usr/bin/env python3
"""Run the opt-in degree-9 survey (long: hours without a warm cache).

Usage: python3 scripts/run_degree9.py [cache-dir]
The cache directory (default ./cachedata) makes reruns instant and lets the
acceptance suite pick the result up.
"""

import sys
import time

from permdeg.pipeline import survey_degree


def main() -> int:
    cache = sys.argv[1] if len(sys.argv) > 1 else "cachedata"
    start = time.time()
    r = survey_degree(9, cache)
    ind = ", ".join(f"{k}:{v}" for k, v in sorted(r.ind_multiset.items()))
    print(
        f"degree 9: {r.total_classes} classes, {r.minemb_count} minimally "
        f"embedded, ind {{{ind}}}, comp "
        f"{'NONEMPTY' if r.comp_nonempty else 'empty'} "
        f"({time.time() - start:.0f}s)"
    )
    for c in r.contradictions:
        print(f"CONTRADICTION: {c}", file=sys.stderr)
    return 1 if r.contradictions else 0


if __name__ == "__main__":
    sys.exit(main())
