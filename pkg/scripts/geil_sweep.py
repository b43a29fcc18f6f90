"""Enumerate every gender composition up to N authors and tabulate GEIL.

Shows which author-set sizes and compositions can produce a given GEIL
value (e.g. which ones yield 1.50).
"""

import argparse
from collections import defaultdict
from itertools import combinations_with_replacement

from aua.bibdata import AuthorMention
from aua.bibdata.model import DEFAULT_GENDERS
from aua.metrics import geil


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-authors", type=int, default=4)
    ap.add_argument("--target", type=float, default=None, help="only list compositions with this GEIL")
    args = ap.parse_args()

    table = defaultdict(list)
    for n in range(0, args.max_authors + 1):
        for combo in combinations_with_replacement(DEFAULT_GENDERS, n):
            value = geil([AuthorMention("A", "B", "i", g) for g in combo])
            counts = tuple(sum(1 for g in combo if g is c) for c in DEFAULT_GENDERS)
            table[value].append((n, counts))

    for value in sorted(table):
        if args.target is not None and value != args.target:
            continue
        comps = ", ".join(f"n={n} {c}" for n, c in table[value])
        print(f"GEIL {value:.2f}: {comps}")


if __name__ == "__main__":
    main()
