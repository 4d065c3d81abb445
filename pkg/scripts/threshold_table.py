"""Print tree-Ramsey thresholds for small heights and color counts.

    python3 scripts/threshold_table.py --budget-ms 60000
"""

import argparse

from treeramsey.coloring import tree_ramsey_threshold
from treeramsey.treecore import BudgetExceeded


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-height", type=int, default=2)
    ap.add_argument("--max-k", type=int, default=3)
    ap.add_argument("--budget-ms", type=int, default=60_000)
    ap.add_argument("--depth", type=int, default=6, help="largest horizon searched")
    a = ap.parse_args()
    print(f"{'height':>6} {'k':>3} {'threshold':>10}  method")
    for h in range(1, a.max_height + 1):
        for k in range(1, a.max_k + 1):
            try:
                r = tree_ramsey_threshold(h, k, a.budget_ms, a.depth)
                print(f"{h:>6} {k:>3} {r.threshold:>10}  {r.method}")
            except BudgetExceeded as exc:
                print(f"{h:>6} {k:>3} {'>= ' + str(exc.lower_bound):>10}  budget exceeded")


if __name__ == "__main__":
    main()
