"""Ordered versus unordered separation of the type-(4,4,4,4) coalition in the four-class game."""

import argparse
import time

from votedim import bits
from votedim.constructions import prop_ne_coalition, prop_ne_game
from votedim.weightedness import ordered_separation


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--class-size", type=int, default=20)
    args = p.parse_args()
    g = prop_ne_game(args.class_size, check=True)
    T = prop_ne_coalition(g)
    print(f"n = {g.n}, classes {g.class_sizes}")
    for respect in (True, False):
        t0 = time.perf_counter()
        res = ordered_separation(g, T, respect_order=respect)
        dt = time.perf_counter() - t0
        label = "with class order" if respect else "without order"
        if res:
            q, w = res.integral()
            inside = sorted({w[v - 1] for v in bits.members(T)})
            outside = sorted({w[v] for v in range(g.n) if not T >> v & 1})
            print(f"{label}: feasible in {dt:.2f}s, quota {q}, weights on T {inside}, elsewhere {outside}")
        else:
            print(f"{label}: infeasible in {dt:.2f}s, Farkas certificate checks: {res.check()}")


if __name__ == "__main__":
    main()
