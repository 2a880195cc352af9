"""Write the Wirtinger presentation of an odd pretzel knot P(p, q, r) as JSON.

    python scripts/make_pretzel.py -3 5 7 > tests/data/pretzel_-3_5_7.json

The diagram has three vertical twist columns joined pairwise at the top and
bottom. The knot is traced once, arcs are cut at undercrossings and each
crossing gives the relation ``b = o^e a o^-e`` (``o`` over arc, ``a``/``b``
incoming/outgoing under arcs, ``e`` the crossing sign). One relation is
dropped. Every generator is a meridian, so phi is 1 everywhere.
"""

import argparse
import json
import sys


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def pretzel_presentation(twists):
    cols = len(twists)
    if any(p % 2 == 0 for p in twists) or cols % 2 == 0:
        raise ValueError("only odd pretzel knots with an odd number of columns are supported")

    # walk the diagram; a position is (column, level, side, moving_down)
    start = (0, 0, "L", True)
    pos = start
    passes = []  # (crossing id, direction, is_over)
    segments = 0
    while True:
        i, lev, side, down = pos
        segments += 1
        p = abs(twists[i])
        sgn = 1 if twists[i] > 0 else -1
        if down and lev < p:
            other = "R" if side == "L" else "L"
            direction = (1, -1) if side == "L" else (-1, -1)
            # the "\" strand joins (lev, L) and (lev + 1, R)
            backslash = side == "L"
            passes.append(((i, lev), direction, backslash == (sgn > 0)))
            pos = (i, lev + 1, other, True)
        elif not down and lev > 0:
            other = "R" if side == "L" else "L"
            direction = (1, 1) if side == "L" else (-1, 1)
            backslash = side == "R"
            passes.append(((i, lev - 1), direction, backslash == (sgn > 0)))
            pos = (i, lev - 1, other, False)
        elif down:  # bottom of column: outer arc along the bottom
            j = (i + 1) % cols if side == "R" else (i - 1) % cols
            pos = (j, abs(twists[j]), "L" if side == "R" else "R", False)
        else:  # top of column
            j = (i + 1) % cols if side == "R" else (i - 1) % cols
            pos = (j, 0, "L" if side == "R" else "R", True)
        if pos == start:
            break
    ncross = sum(abs(p) for p in twists)
    if len(passes) != 2 * ncross:
        raise ValueError("diagram is not a single component")

    # arcs: a new arc starts after every underpass
    arc = 0
    over_arc = {}
    under = {}  # crossing -> (incoming arc, outgoing arc, direction)
    over_dir = {}
    for c, d, is_over in passes:
        if is_over:
            over_arc[c] = arc
            over_dir[c] = d
        else:
            under[c] = (arc, arc + 1, d)
            arc += 1
    narcs = arc
    # the final arc wraps around to arc 0
    under = {c: (a % narcs, b % narcs, d) for c, (a, b, d) in under.items()}
    over_arc = {c: a % narcs for c, a in over_arc.items()}

    names = [f"a{k}" for k in range(narcs)]
    relators = []
    for c in sorted(under):
        a, b, d = under[c]
        o = over_arc[c]
        sign = 1 if _cross(over_dir[c], d) > 0 else -1
        A, B, O = names[a], names[b], names[o]
        if sign > 0:  # b = o a o^-1
            relators.append(f"{B}' {O} {A} {O}'")
        else:  # b = o^-1 a o
            relators.append(f"{B}' {O}' {A} {O}")
    relators = relators[:-1]
    return {
        "generators": names,
        "relators": relators,
        "phi": {g: 1 for g in names},
        "components": {g: 0 for g in names},
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("twists", type=int, nargs="+")
    args = ap.parse_args()
    json.dump(pretzel_presentation(args.twists), sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
