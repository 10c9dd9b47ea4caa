"""Recompute the known-homology table of hypersurface links and print it.

Each row lists weights, degree, the middle Betti number and the torsion
chain, plus the Smale name when the link is 5-dimensional.  Exits nonzero
if any recomputed group disagrees with the pinned value.
"""

import sys

from selink import WeightedLink, link_homology, smale_name

ROWS = [
    ((1, 1, 1, 1, 3), 6, 104, (2,)),
    ((1, 1, 1, 2, 4), 8, 128, (4,)),
    ((1, 1, 2, 2, 5), 10, 128, (2, 2, 2, 2)),
    ((1, 1, 1, 4, 6), 12, 222, ()),
    ((1, 1, 2, 3, 6), 12, 150, (3, 4)),
    ((1, 1, 3, 4, 4), 12, 120, (4, 4)),
    ((1, 2, 3, 3, 4), 12, 80, (2, 2, 3, 3, 3)),
    ((1, 2, 3, 5, 7), 17, 112, (17,)),
    ((1, 1, 2, 6, 9), 18, 256, (2, 2)),
    ((1, 3, 4, 5, 7), 19, 90, (19,)),
    ((1, 1, 4, 5, 10), 20, 216, (5,)),
    ((1, 1, 3, 8, 12), 24, 308, (3,)),
    ((1, 2, 3, 10, 15), 30, 242, (2, 2, 3)),
    ((1, 1, 6, 14, 21), 42, 480, ()),
]


def main() -> int:
    bad = 0
    print(f"{'weights':>18} {'d':>3} {'group':<28} ok")
    for weights, degree, betti, primary in ROWS:
        group = link_homology(WeightedLink(weights, degree))
        ok = group.betti == betti and group.primary_decomposition() == tuple(sorted(primary))
        bad += not ok
        print(
            f"{','.join(map(str, weights)):>18} {degree:>3} "
            f"{group.group_string():<28} {'yes' if ok else 'NO'}"
        )
    quadric = link_homology(WeightedLink((1, 1, 1, 1), 2))
    print(f"\nquadric 5-link: {quadric.group_string()} = {smale_name(quadric).name()}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
