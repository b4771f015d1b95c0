"""Run the claim suite over several alphabet sizes and write the consolidated JSON report."""

import argparse
import json
import sys
import warnings

from hamvc.harness import CLAIM_IDS, Budget, claims_for, run_suite, suite_json


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", default=[3, 4, 5, 6, 7])
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--samples", type=int, default=10**4)
    ap.add_argument("--cap", type=int, default=10**7)
    ap.add_argument("-o", "--output", default="suite_report.json")
    args = ap.parse_args()

    claims, skipped = [], []
    for q in args.q:
        for cid in CLAIM_IDS:
            got = claims_for(cid, q)
            claims += got
            if not got:
                skipped.append(f"{cid} at q={q}")
    warnings.simplefilter("ignore")
    reports = run_suite(claims, Budget(cap=args.cap, samples=args.samples, seed=args.seed))
    for r in reports:
        print(f"{r.outcome:10s} {r.mode:12s} {r.work:9d} {r.elapsed:8.2f}s  {r.claim.label()}")
        if r.reason:
            print(f"{'':10s} {r.reason}")
    doc = suite_json(reports, skipped, timing=True)
    with open(args.output, "w") as fh:
        json.dump(doc, fh, indent=2)
    print(f"exit code {doc['exit_code']}; report in {args.output}")
    return doc["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
