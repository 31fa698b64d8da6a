"""Watch B(k*rho) stabilize below the top as k grows.

Prints the number of crystal vertices at each depth nu of height at most
``--height`` for k = 1..``--kmax``, next to the Kostant partition count,
which is the limiting value.

    python3 scripts/binf_stabilization.py --cartan C2 --height 4 --kmax 5
"""

import argparse
import sys
from itertools import product

from qfold.cartan import NAMED, named
from qfold.crystal import build_crystal, crystal_isomorphic
from qfold.suite import kostant_partition


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    p.add_argument("--cartan", default="C2", choices=sorted(NAMED))
    p.add_argument("--height", type=int, default=3)
    p.add_argument("--kmax", type=int, default=5)
    args = p.parse_args()
    cd = named(args.cartan)
    window = [nu for nu in product(range(args.height + 1), repeat=cd.rank) if sum(nu) <= args.height]
    window.sort(key=lambda nu: (sum(nu), nu))
    crystals = {k: build_crystal(cd, cd.weight((k,) * cd.rank), args.height) for k in range(1, args.kmax + 1)}
    counts = {k: B.counts_by_depth() for k, B in crystals.items()}
    head = " ".join(f"k={k:<3}" for k in crystals)
    print(f"{'nu':>14}  {head}  kostant")
    for nu in window:
        row = " ".join(f"{counts[k].get(nu, 0):<5}" for k in crystals)
        print(f"{str(list(nu)):>14}  {row}  {kostant_partition(cd, nu)}")
    for k in range(1, args.kmax):
        iso = crystal_isomorphic(crystals[k], crystals[k + 1], by="depth") is not None
        print(f"window of B({k}rho) isomorphic to window of B({k + 1}rho): {iso}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
