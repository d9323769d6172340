"""Count small posets by classifier verdict."""

import argparse
from collections import Counter

from heyting.census import all_posets
from heyting.classifiers import is_cascade, is_diamond_algebra, is_diamond_sequence, is_root_system


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()
    print(f"{'n':>2} {'posets':>7} {'rooted':>7} {'cascade':>8} {'diamond':>8} {'dseq':>5} {'root':>5}")
    for n in range(1, args.max_n + 1):
        c = Counter()
        for X in all_posets(n):
            c["all"] += 1
            c["rooted"] += X.is_rooted
            c["cascade"] += is_cascade(X).verdict
            c["diamond"] += is_diamond_algebra(X).verdict
            c["dseq"] += is_diamond_sequence(X)
            c["root"] += is_root_system(X)
        print(f"{n:2d} {c['all']:7d} {c['rooted']:7d} {c['cascade']:8d} {c['diamond']:8d} {c['dseq']:5d} {c['root']:5d}")


if __name__ == "__main__":
    main()
