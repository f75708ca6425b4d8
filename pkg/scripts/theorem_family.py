"""Code-based lower bounds for two-class games with shift-minimal vectors (k,0) and (0,2k)."""

import argparse
from math import comb

from votedim.clique import max_clique
from votedim.codes import brute_force_A
from votedim.constructions import theorem_bundle
from votedim.dimension import boolean_upper_construction, conflict_graph, leaf_count
from votedim.games import games_equal
from votedim.weightedness import Verdict, verify_trading_transform


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--lp-k-max", type=int, default=3, help="largest k for the LP clique cross-check")
    args = p.parse_args()
    print(f"{'k':>2} {'n':>3} {'|code|':>6} {'A(2k,4;k)':>9} {'C(2k,k)/2k':>10} {'certs ok':>8} {'clique':>6} {'leaves':>6}")
    for k in range(2, args.k_max + 1):
        b = theorem_bundle(k)
        ok = all(verify_trading_transform(b.game, c) is Verdict.VALID for c in b.certificates)
        A = brute_force_A(2 * k, 4, k)
        clique = "-"
        if k <= args.lp_k_max:
            cg = conflict_graph(b.game, b.losing_family)
            clique = len(max_clique(cg.adjacency)[0])
        h = boolean_upper_construction(b.game)
        assert games_equal(h, b.game)
        print(f"{k:>2} {b.game.n:>3} {b.code.size:>6} {A:>9} {comb(2 * k, k) / (2 * k):>10.2f} "
              f"{str(ok):>8} {clique!s:>6} {leaf_count(h):>6}")


if __name__ == "__main__":
    main()
