"""Self-contained, byte-stable SVG figures."""

from __future__ import annotations

import io

import matplotlib

matplotlib.use("svg")
import matplotlib.pyplot as plt  # noqa: E402

from .analysis import SweepReport, TransitionCurve  # noqa: E402

_RC = {"svg.hashsalt": "popmatch", "svg.fonttype": "path", "font.size": 10}


def _render(fig) -> str:
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)
    return buf.getvalue()


def transition_curve_svg(curve: TransitionCurve, alpha_star: float) -> str:
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6, 4))
        pts = curve.numeric()
        ax.plot([k for k, _ in pts], [a for _, a in pts], "o-", color="C0", label=r"$\alpha_k$")
        ax.axhline(alpha_star, ls="--", color="0.4", label=rf"$\alpha_\star \approx {alpha_star:.4f}$")
        ax.set_xlabel("list length k")
        ax.set_ylabel(r"transition point $\alpha_k$")
        ax.legend(loc="lower right")
        fig.tight_layout()
        return _render(fig)


def sweep_svg(report: SweepReport, marker: float | None = None) -> str:
    """Existence frequency against realised alpha, one curve per (n, k)."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6, 4))
        groups: dict[tuple, list] = {}
        for r in report.rows:
            if r.exists_freq is not None:
                groups.setdefault((r.n, r.k), []).append(r)
        for (n, k), rows in groups.items():
            rows.sort(key=lambda r: r.alpha_realized)
            ax.errorbar(
                [r.alpha_realized for r in rows],
                [r.exists_freq for r in rows],
                yerr=[r.exists_se for r in rows],
                marker="o",
                ms=3,
                capsize=2,
                label=f"n={n}, k={k}",
            )
        if marker is not None:
            ax.axvline(marker, ls="--", color="0.4", label=rf"$\alpha_k \approx {marker:.4f}$")
        ax.set_ylim(-0.03, 1.03)
        ax.set_xlabel(r"$\alpha = m/n$")
        ax.set_ylabel("P[popular matching exists]")
        ax.legend(loc="lower right")
        fig.tight_layout()
        return _render(fig)
