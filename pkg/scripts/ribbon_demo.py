"""Run the ribbon concordance divisibility screen on a few catalog pairs.

    python scripts/ribbon_demo.py
"""

from twistalex.catalog import CATALOG
from twistalex.obstructions import fiber_check, ribbon_screen
from twistalex.presentation import connected_sum


def knot(name):
    return CATALOG[name].presentation()


def csum(*names):
    P = knot(names[0])
    for n in names[1:]:
        P = connected_sum(P, P.generators[0], knot(n), "x1")
    return P


PAIRS = [
    ("3_1", "3_1#4_1#4_1", csum("3_1", "4_1", "4_1")),
    ("4_1", "3_1", knot("3_1")),
    ("unknot", "4_1", knot("4_1")),
    ("5_2", "5_2#3_1#3_1", csum("5_2", "3_1", "3_1")),
    ("6_1", "6_1", knot("6_1")),
]


def main():
    for lower, label, upper in PAIRS:
        L = knot(lower)
        r = ribbon_screen(L, upper)
        print(f"{lower} <= {label}: {r.verdict.value}")
        print(f"    lower delta = {r.lower_delta}")
        print(f"    upper delta = {r.upper_delta}")
    # a fibered upper knot forces a fibered lower knot
    lower = knot("5_2")
    r = ribbon_screen(lower, knot("3_1"), upper_fibered=True, lower_verdict=fiber_check(lower, 1))
    print(f"5_2 <= 3_1 (3_1 fibered): {r.verdict.value}; {r.fibered_transfer}")


if __name__ == "__main__":
    main()
