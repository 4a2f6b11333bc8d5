"""Run the full check suite and write the JSON reports.

    python3 scripts/run_corpus.py --out suite.json [--all] [--field 3] [--max-degree 4]
"""

import argparse
import collections
import sys
from pathlib import Path

from hochjz.suite import SuiteConfig, run_suite, suite_json


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--out", default="suite.json")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--field", type=int, default=0)
    p.add_argument("--all", action="store_true", help="include the slow coefficient-free runs")
    p.add_argument("--timing", action="store_true")
    args = p.parse_args(argv)
    cfg = SuiteConfig(N=args.max_degree, characteristic=args.field, timing=args.timing, skip_slow=not args.all)
    reports = run_suite(cfg)
    Path(args.out).write_text(suite_json(reports) + "\n")
    counts = collections.Counter((r.check, r.verdict) for r in reports)
    for (check, verdict), n in sorted(counts.items()):
        print(f"{check:22s} {verdict:20s} {n}")
    print(f"{len(reports)} reports written to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
