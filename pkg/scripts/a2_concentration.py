"""Spread of the A2 ratio as n grows, against its limit beta(alpha, k)."""

import argparse

from popmatch.analysis import beta_expected, sweep_a2
from popmatch.parallel import default_threads


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", type=float, default=1.5)
    ap.add_argument("--k", type=int, default=4)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=default_threads())
    args = ap.parse_args()

    beta = beta_expected(args.alpha, args.k)
    print(f"beta({args.alpha}, {args.k}) = {beta:.6f}")
    print(f"{'n':>8} {'mean':>9} {'sd':>9} {'sd*sqrt(n)':>11}")
    for n in (10**3, 10**4, 10**5):
        row = sweep_a2(n, args.k, [args.alpha], args.trials, args.seed, args.threads).rows[0]
        print(f"{n:>8} {row.a2_mean:9.5f} {row.a2_sd:9.5f} {row.a2_sd * n ** 0.5:11.4f}")


if __name__ == "__main__":
    main()
