"""Exhaustive searches for the two places where the expected structure
breaks down.

1. Vertices whose finite expansions tie for the most +1 partial numerators,
   so the max-+1 selection has two members although the vertex is not a
   mediant point.
2. Denominator-increasing paths longer than two steps between adjacent
   vertices of F_N (they exist once p >= 5).
"""

import argparse
import math
import sys
from collections import Counter
from fractions import Fraction
from pathlib import Path

from farey_cf.expansion import enumerate_all_expansions, expand_max_plus_one, select_max_plus_one
from farey_cf.graph import MediantPoint, Modulus, classify

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from oracles import twoways_violations  # noqa: E402


def selection_ties(m: Modulus, max_den: int):
    for d in range(m.N, max_den + 1, m.N):
        for a in range(d):
            if math.gcd(a, d) != 1:
                continue
            x = Fraction(a, d)
            if isinstance(classify(x, m), MediantPoint):
                continue
            sel = select_max_plus_one(enumerate_all_expansions(x, m))
            if len(sel) > 1:
                yield x, sel


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--moduli", type=int, nargs="+", default=[3, 4, 5, 7, 9, 25, 27])
    ap.add_argument("--max-den", type=int, default=400, help="vertex denominators for the tie search")
    ap.add_argument("--path-den", type=int, default=100, help="denominator bound for the path search")
    args = ap.parse_args(argv)
    for n in args.moduli:
        m = Modulus.from_prime_power(n)
        ties = list(selection_ties(m, args.max_den))
        print(f"N={n}: {len(ties)} non-mediant vertices in [0,1) with den <= {args.max_den} have a tied selection")
        for x, sel in ties[:3]:
            (fast,) = expand_max_plus_one(x, m).expansions
            print(f"    {x}: " + " | ".join(s.text() for s in sel) + f"   (algorithm: {fast.text()})")
        pairs, bad = twoways_violations(n, args.path_den)
        lengths = Counter(int(b.split()[3]) for b in bad if b.startswith("path"))
        print(f"    paths: {pairs} adjacent pairs, longer increasing paths by length {dict(sorted(lengths.items()))}")
        if bad:
            print(f"    e.g. {bad[0]}")


if __name__ == "__main__":
    main()
