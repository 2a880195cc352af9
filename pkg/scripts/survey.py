"""Tabulate classical polynomials and fiber_check verdicts over the catalog.

    python scripts/survey.py --max-degree 4 --max-dim 24
"""

import argparse
import time

from twistalex.catalog import CATALOG
from twistalex.finite_reps import trivial_representation
from twistalex.obstructions import fiber_check
from twistalex.twisted import twisted_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=4)
    ap.add_argument("--max-dim", type=int, default=24)
    ap.add_argument("--budget", type=float, default=60.0, help="seconds per entry")
    args = ap.parse_args()

    print(f"{'name':8} {'delta1':28} {'monic':6} {'status':22} {'quotients':>9} {'secs':>6}")
    for name, entry in CATALOG.items():
        P = entry.presentation()
        classical = twisted_report(P, trivial_representation(P))
        t0 = time.perf_counter()
        v = fiber_check(P, args.max_degree, budget_secs=args.budget, max_dim=args.max_dim, keep_reports=False)
        tested = sum(g.tested for g in v.tested)
        print(
            f"{name:8} {str(classical.delta1):28} {str(classical.monic):6} "
            f"{v.status.value:22} {tested:>9} {time.perf_counter() - t0:6.2f}"
        )


if __name__ == "__main__":
    main()
