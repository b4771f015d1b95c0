"""VC-dimension, four-point lines and rectangles of the three-band diagonal set over q."""

import argparse
import warnings

from hamvc.configs import find_four_on_line, find_rectangle
from hamvc.constructions import construct_band3
from hamvc.shatter import vc_dimension


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d", type=int, nargs="+", default=[3])
    ap.add_argument("--q", type=int, nargs="+", default=list(range(4, 13)))
    args = ap.parse_args()
    warnings.simplefilter("ignore")
    print(f"{'d':>2s} {'q':>3s} {'size':>6s} {'vc':>3s}  line4  rectangle / witness")
    for d in args.d:
        for q in args.q:
            U = construct_band3(d, q)
            res = vc_dimension(U)
            rect = find_rectangle(U)
            line4 = find_four_on_line(U) is not None
            extra = ""
            if rect:
                extra = " ".join(str(p) for p in rect.roles.values())
            if res.dimension >= 3:
                extra += f"  W = {list(res.witness.W)}"
            print(f"{d:2d} {q:3d} {U.size:6d} {res.dimension:3d}  {str(line4):5s}  {extra}")


if __name__ == "__main__":
    main()
