"""Build the truncated counterexample posets and check each against its Jankov formula."""

import argparse

from heyting.catalog import FORBIDDEN, named, truncated_counterexample
from heyting.classifiers import is_diamond_system
from heyting.duality import jankov_valid


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()
    print(f"{'case':4} {'N':>3} {'points':>6} {'copies':>6} {'J refuted':>9}  first failing diamond condition")
    for case in FORBIDDEN:
        for N in range(4, args.max_n + 1):
            w = truncated_counterexample(case, N)
            refuted = not jankov_valid(w.poset, named(case)).valid
            r = is_diamond_system(w.poset)
            failing = next((k for k, v in r.routes.items() if not v), "-")
            print(f"{case:4} {N:3d} {w.poset.n:6d} {w.copies:6d} {str(refuted):>9}  {failing}")


if __name__ == "__main__":
    main()
