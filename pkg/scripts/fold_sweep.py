"""Compare folded crystals with directly built ones over a range of weights.

For every dominant weight whose module has dimension at most ``--bound``,
build the crystal of the unfolded simply-laced datum at the a-invariant
weight, keep the fixed points with orbit-product operators, and test the
result for isomorphism with the crystal built directly on the folded datum.

    python3 scripts/fold_sweep.py --cartan C2 --bound 500
"""

import argparse
import sys
import time

from qfold.cartan import NAMED, named
from qfold.suite import dominant_weights_up_to, fold_check


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    p.add_argument("--cartan", default="C2", choices=sorted(NAMED))
    p.add_argument("--bound", type=int, default=500)
    args = p.parse_args()
    cd = named(args.cartan)
    if not cd.is_finite_type():
        p.error("the sweep enumerates complete crystals, so it needs a finite-type datum")
    print(f"{'weight':>10} {'unfolded':>9} {'folded':>7} {'direct':>7}  isomorphic")
    bad = 0
    t0 = time.perf_counter()
    for lam in dominant_weights_up_to(cd, args.bound):
        r = fold_check(cd, lam)
        bad += not r["isomorphic"]
        print(f"{str(list(lam)):>10} {r['unfolded']:>9} {r['folded']:>7} {r['direct']:>7}  {r['isomorphic']}")
    print(f"{bad} mismatches, {time.perf_counter() - t0:.1f} s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
