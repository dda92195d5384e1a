"""Transition points alpha_k against k, with the complete-list limit."""

import argparse
from pathlib import Path

from popmatch.analysis import alpha_star, transition_curve
from popmatch.plotting import transition_curve_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-max", type=int, default=40)
    ap.add_argument("--out", default="results")
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    curve = transition_curve(args.k_max)
    star = alpha_star()
    for k, a in curve.points:
        print(f"{k:>4}  " + ("no-root" if a is None else f"{a:.10f}  (alpha_star - alpha_k = {star - a:.2e})"))
    print(f"alpha_star = {star:.12f}")
    (out / "transition_curve.svg").write_text(transition_curve_svg(curve, star))


if __name__ == "__main__":
    main()
