"""Existence frequency over an alpha grid for several list lengths."""

import argparse
from pathlib import Path

import numpy as np

from popmatch.analysis import alpha_k, sweep_existence
from popmatch.parallel import default_threads
from popmatch.plotting import sweep_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--ks", default="3,4,5,6,8")
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=default_threads())
    ap.add_argument("--out", default="results")
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    alphas = np.round(np.arange(1.0, 1.7001, 0.05), 12).tolist()
    for k in (int(s) for s in args.ks.split(",")):
        report = sweep_existence(args.n, k, alphas, args.trials, args.seed, args.threads)
        (out / f"sweep_n{args.n}_k{k}.csv").write_text(report.to_csv(timing=False))
        (out / f"sweep_n{args.n}_k{k}.svg").write_text(sweep_svg(report, alpha_k(k)))
        root = alpha_k(k)
        print(f"k={k} alpha_k={'none' if root is None else f'{root:.4f}'}")
        for r in report.rows:
            print(f"  alpha={r.alpha_realized:.3f}  exists={r.exists_freq:.3f} +- {r.exists_se:.3f}  a2={r.a2_mean:.4f}")


if __name__ == "__main__":
    main()
