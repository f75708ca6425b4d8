"""Exact dimension of the parametric two-class family for a range of d."""

import argparse
import time

from votedim.constructions import parametric_bundle
from votedim.dimension import dimension_exact


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--d-max", type=int, default=5)
    p.add_argument("--budget", type=float, default=None)
    args = p.parse_args()
    print(f"{'d':>2} {'n':>3} {'#max losing':>11} {'clique':>6} {'exact':>5} {'secs':>6}")
    for d in range(2, args.d_max + 1):
        b = parametric_bundle(d)
        t0 = time.perf_counter()
        rep = dimension_exact(b.game, args.budget)
        print(f"{d:>2} {b.game.n:>3} {rep.upper_maxlosing:>11} {rep.lower_clique:>6} {rep.exact:>5} "
              f"{time.perf_counter() - t0:>6.2f}")


if __name__ == "__main__":
    main()
