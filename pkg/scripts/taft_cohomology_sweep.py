"""Cohomology dimensions of the Hom-type Taft algebra for a range of twists.

    python3 scripts/taft_cohomology_sweep.py [--max-degree 3] [LAMBDA ...]

Every cocycle basis vector is substituted back into the total differential
before the row is printed.
"""

import argparse
import time
from fractions import Fraction

from hombialg.cohomology import apply_total_delta, cochain_dims, cohomology, cohomology_dims
from hombialg.structures import build_taft

DEFAULT = ["0", "1", "-1", "2", "3", "1/2", "-2", "5/3"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("lambdas", nargs="*", default=DEFAULT)
    ap.add_argument("--max-degree", type=int, default=3)
    args = ap.parse_args()

    degrees = range(1, args.max_degree + 1)
    head = "lambda".ljust(8) + "".join(
        "".join(f"  {x + '^' + str(n):<6}" for x in "CZBH") for n in degrees)
    print(head)
    for s in args.lambdas:
        B = build_taft(Fraction(s))
        t0 = time.perf_counter()
        row = s.ljust(8)
        for n in degrees:
            if n <= 2:
                r = cohomology(B, n)
                assert all(apply_total_delta(B, z).is_zero() for z in r.cocycle_basis)
                dims = (sum(cochain_dims(B, n)), r.dim_Z, r.dim_B, r.dim_H)
            else:
                d = cohomology_dims(B, n)
                dims = (d["dim_C"], d["dim_Z"], d["dim_B"], d["dim_H"])
            row += "".join(f"  {x:<6}" for x in dims)
        print(row + f"   ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
