"""Complex components in G' across beta, and branching survival against the cap."""

import argparse
import math

from popmatch.random_graphs import branching_simulate, graph_trials, solve_survival_fixed_point
from popmatch.parallel import default_threads


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=10_000)
    ap.add_argument("--alpha", type=float, default=1.0)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=default_threads())
    args = ap.parse_args()

    n = round(args.m / args.alpha)
    h = math.floor(math.exp(-1 / args.alpha) * args.m)
    threshold = args.alpha * math.exp(-0.5 / args.alpha)
    print(f"G'(m={args.m}, h={h}, beta*n, (1-beta)*n); threshold beta = {threshold:.4f}")
    for beta in (0.3, 0.4, 0.5, 0.55, 0.6, 0.65, 0.7, 0.8, 0.9):
        z1 = round(beta * n)
        res = graph_trials(args.m, h, z1, n - z1, args.trials, args.seed, args.threads)
        print(f"  beta={beta:.2f} complex={res.complex_frequency:.3f} +- {res.complex_se:.3f}"
              f" giant={res.giant_mean:.4f}")

    print("branching survival at (2, 2) by cap")
    y = solve_survival_fixed_point(2, 2)
    for cap in (10**2, 10**3, 10**4):
        out = branching_simulate(2, 2, 10_000, cap=cap, seed=args.seed, threads=args.threads)
        print(f"  cap={cap:>6} survival={out.survival_frequency:.4f} fixed point={y:.4f}")


if __name__ == "__main__":
    main()
