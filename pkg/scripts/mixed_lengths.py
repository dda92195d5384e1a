"""Instances whose people hold lists of different lengths.

The predicted A2 ratio of a mixture is the weighted mean of the pure-length
values; the existence curve should fall between the pure curves.
"""

import argparse

from popmatch.analysis import beta_expected, sweep_existence
from popmatch.parallel import default_threads


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=default_threads())
    args = ap.parse_args()

    mixes = {"k=2": 2, "k=8": 8, "half 2 / half 8": {2: 0.5, 8: 0.5}, "90% 8": {2: 0.1, 8: 0.9}}
    alphas = [1.0, 1.1, 1.2, 1.3, 1.4, 1.5]
    for label, k in mixes.items():
        report = sweep_existence(args.n, k, alphas, args.trials, args.seed, args.threads)
        print(label)
        for r in report.rows:
            if isinstance(k, dict):
                total = sum(k.values())
                pred = sum(w / total * beta_expected(r.alpha_realized, kk) for kk, w in k.items())
            else:
                pred = beta_expected(r.alpha_realized, k)
            print(f"  alpha={r.alpha_realized:.2f} exists={r.exists_freq:.3f} a2={r.a2_mean:.4f} predicted={pred:.4f}")


if __name__ == "__main__":
    main()
