"""Run every registered suite with its default budget and print the
summaries, one JSON line each.  Exit status is the worst suite status
(0 ok, 1 failure, 3 budget exceeded)."""

import argparse
import sys

from treeramsey import jsonio
from treeramsey.suites import SUITES, run_suite



def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--only", nargs="*", default=None)
    ap.add_argument("--timing", action="store_true")
    a = ap.parse_args()
    statuses = set()
    for name in sorted(SUITES):
        if a.only and name not in a.only:
            continue
        rep = run_suite(name, seed=a.seed)
        print(jsonio.dumps(rep.summary(timing=a.timing)), flush=True)
        statuses.add(rep.status)
    if "fail" in statuses:
        return 1
    return 3 if "budget-exceeded" in statuses else 0


if __name__ == "__main__":
    sys.exit(main())
