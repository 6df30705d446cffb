"""Running proportion estimates for iid categorical trials, one CSV per seed.

    python scripts/simulate_convergence.py --theta 1/2,3/10,1/5 --k 100000 --seeds 0-4 --out runs/
"""

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from possprob.multinomial import simulate


def seed_range(text: str) -> range:
    lo, _, hi = text.partition("-")
    return range(int(lo), int(hi or lo) + 1)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--theta", default="1/2,3/10,1/5")
    parser.add_argument("--k", type=int, default=10 ** 5)
    parser.add_argument("--seeds", type=seed_range, default=seed_range("0-19"))
    parser.add_argument("--out", type=Path, default=None, help="directory for CSV tables")
    args = parser.parse_args(argv)
    theta = tuple(Fraction(t) for t in args.theta.split(","))
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    worst = 0.0
    for seed in args.seeds:
        result = simulate(theta, args.k, seed)
        err = max(abs(e - float(t)) for e, t in zip(result.final_estimate, theta))
        worst = max(worst, err)
        print(f"seed={seed} estimate=" + ",".join(f"{e:.6f}" for e in result.final_estimate)
              + f" max_error={err:.6f}")
        if args.out:
            (args.out / f"seed{seed}.csv").write_text(result.table_text())
    print(f"worst max_error={worst:.6f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
