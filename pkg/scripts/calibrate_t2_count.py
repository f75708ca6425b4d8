"""Count complete games with two classes of voters and compare with the Fibonacci formulas."""

import argparse

from votedim.complete import calibrate_offset, count_formula_t2, count_t2, enumerate_t2


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=9)
    args = p.parse_args()
    counts = {}
    print(f"{'n':>3} {'enumerated':>11} {'Fib(n+6)-(n^2+4n+8)':>20} {'Fib(n+6)-(n^2-4n+8)':>20}")
    for n in range(args.n_min, args.n_max + 1):
        counts[n] = len(enumerate_t2(n))
        print(f"{n:>3} {counts[n]:>11} {count_t2(n):>20} {count_formula_t2(n):>20}")
    offset = calibrate_offset({n: c for n, c in counts.items() if n >= 4})
    print("Fibonacci offset fitting n >= 4:", "none" if offset is None else offset)


if __name__ == "__main__":
    main()
