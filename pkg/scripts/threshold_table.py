"""Exact universal thresholds m* by pruned search, next to the closed-form bounds."""

import argparse

from hamvc.core import HammingParams
from hamvc.harness import Infeasible, threshold_search

# (d, q, t, k, closed-form bound or None)
CASES = [
    (2, 3, 1, 2, 6),
    (2, 4, 1, 2, 9),
    (2, 5, 1, 2, 10),
    (2, 3, 2, 2, 6),
    (2, 4, 2, 2, 8),
    (2, 4, 1, 3, 13),
    (2, 3, 1, 3, None),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cap", type=int, default=5 * 10**6)
    args = ap.parse_args()
    print(f"{'graph':10s} {'k':>2s} {'m*':>4s} {'bound':>6s} {'work':>9s}  certificate")
    for d, q, t, k, bound in CASES:
        p = HammingParams(d, q, t)
        try:
            m, C, work = threshold_search(p, k, cap=args.cap)
        except Infeasible as e:
            print(f"{str(p):10s} {k:2d}  infeasible: {e}")
            continue
        pts = " ".join("".join(map(str, x)) for x in C.points)
        print(f"{str(p):10s} {k:2d} {m:4d} {bound if bound else '-':>6} {work:9d}  {pts}")


if __name__ == "__main__":
    main()
