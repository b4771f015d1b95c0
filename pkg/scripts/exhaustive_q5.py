"""Exhaustive check that every 10-subset of H(2,5,1) has vc >= 2 (about 3.27M subsets)."""

import argparse
import json
import sys

from hamvc.core import HammingParams
from hamvc.harness import check_universal


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, default=5)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--cap", type=int, default=10**7)
    args = ap.parse_args()

    q = args.q
    last = [0]

    def progress(done, total):
        if done - last[0] >= 500_000 or done == total:
            last[0] = done
            print(f"{done}/{total}", file=sys.stderr, flush=True)

    r = check_universal(HammingParams(2, q), 2 * q, 2, "exhaustive", cap=args.cap, jobs=args.jobs, progress=progress)
    print(json.dumps(r.to_json(timing=True), indent=2))
    return 0 if r.outcome == "verified" else 1


if __name__ == "__main__":
    sys.exit(main())
