"""Transition points and Monte Carlo sweeps over the item/person ratio.

With ``n`` people, ``m`` items and lists of length ``k``, put ``alpha = m/n``.
About ``beta = 1 - (1 - exp(-1/alpha))**(k-1)`` of the people land in A2,
and a popular matching exists with high probability exactly when
``alpha * exp(-1/(2 alpha)) > beta``.  ``alpha_k`` is the crossing point; for
k <= 3 there is none on ``[1, inf)``.  As k grows it tends to the
complete-list threshold, the root of ``x**2 * exp(-1/x) = 1``.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .instance import derive_seed, generate_incomplete, generate_mixed
from .parallel import map_trials
from .roots import bisect
from .topchoice import a2_ratio, exists_popular_fast

__all__ = [
    "CSV_FIELDS",
    "SweepReport",
    "SweepRow",
    "TransitionCurve",
    "alpha_k",
    "alpha_star",
    "beta_expected",
    "h_window",
    "mixed_counts",
    "monotonicity_violations",
    "realized_m",
    "sweep_a2",
    "sweep_existence",
    "threshold_gap",
    "transition_curve",
]

log = logging.getLogger(__name__)

# alpha_k < alpha_star < 2 for every k, and the gap function is positive at 2.
BRACKET = (1.0, 2.0)
RESIDUAL_TOL = 1e-12


def alpha_star() -> float:
    """Root of ``x^2 e^{-1/x} = 1`` on [1, 2]."""
    return bisect(lambda x: x * x * math.exp(-1.0 / x) - 1.0, *BRACKET)


def beta_expected(alpha: float, k: int) -> float:
    """Limiting fraction of people whose list is not covered by first choices."""
    if alpha < 1 or k < 1:
        raise ValueError(f"need alpha >= 1 and k >= 1, got alpha={alpha}, k={k}")
    return 1.0 - (1.0 - math.exp(-1.0 / alpha)) ** (k - 1)


def threshold_gap(x: float, k: int) -> float:
    """``x e^{-1/(2x)} - beta_expected(x, k)``; increasing in x on [1, inf)."""
    return x * math.exp(-0.5 / x) - beta_expected(x, k)


def alpha_k(k: int) -> float | None:
    """Transition point for lists of length k, or None when k <= 3."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    km1 = k - 1

    def gap(x):
        e = math.exp(-1.0 / x)
        return x * math.sqrt(e) - 1.0 + (1.0 - e) ** km1

    lo, hi = BRACKET
    if gap(lo) > 0:
        return None
    if gap(hi) <= 0:
        raise ArithmeticError(f"gap not positive at x={hi} for k={k}")
    return bisect(gap, lo, hi)


@dataclass(frozen=True)
class TransitionCurve:
    points: tuple[tuple[int, float | None], ...]

    def numeric(self) -> list[tuple[int, float]]:
        return [(k, a) for k, a in self.points if a is not None]

    def no_root(self) -> list[int]:
        return [k for k, a in self.points if a is None]

    def is_increasing(self, ulps: int = 2) -> bool:
        """Strictly increasing, up to ties within ``ulps`` units in the last place.

        For k beyond about 50 the roots agree with alpha_star to double
        precision, so neighbouring values may round to the same float.
        """
        vals = [a for _, a in self.numeric()]
        return all(y > x or x - y <= ulps * math.ulp(x) for x, y in zip(vals, vals[1:]))


def transition_curve(k_max: int, k_min: int = 1) -> TransitionCurve:
    if k_max < 4:
        raise ValueError(f"k_max must be >= 4, got {k_max}")
    curve = TransitionCurve(tuple((k, alpha_k(k)) for k in range(k_min, k_max + 1)))
    if not curve.is_increasing():
        raise ArithmeticError("transition curve is not strictly increasing")
    return curve


def h_window(m: int, alpha: float) -> tuple[float, float, int]:
    """Admissible range for the size of S, plus the centre ``floor(e^{-1/alpha} m)``."""
    centre = math.exp(-1.0 / alpha) * m
    spread = m ** (2.0 / 3.0)
    return centre - spread, centre + spread, math.floor(centre)


def realized_m(n: int, alpha: float) -> int:
    m = int(round(alpha * n))
    if m < n:
        raise ValueError(f"alpha={alpha} gives m={m} < n={n}")
    return m


def mixed_counts(n: int, mix: Mapping[int, float]) -> dict[int, int]:
    """Split n people across list lengths by the given weights.

    Largest-remainder rounding so the counts sum to n.
    """
    total = sum(mix.values())
    if total <= 0:
        raise ValueError("mixture weights must sum to a positive value")
    keys = sorted(mix)
    raw = [n * mix[k] / total for k in keys]
    counts = [math.floor(r) for r in raw]
    order = sorted(range(len(keys)), key=lambda i: (-(raw[i] - counts[i]), i))
    for i in order[: n - sum(counts)]:
        counts[i] += 1
    return dict(zip(keys, counts))


CSV_FIELDS = (
    "n", "m", "k", "alpha_requested", "alpha_realized", "trials",
    "exists_freq", "exists_se", "a2_mean", "a2_sd", "elapsed_ms",
)


@dataclass
class SweepRow:
    n: int
    m: int
    k: int | str
    alpha_requested: float
    alpha_realized: float
    trials: int
    exists_freq: float | None
    exists_se: float | None
    a2_mean: float
    a2_sd: float
    elapsed_ms: float | None = None


@dataclass
class SweepReport:
    rows: list[SweepRow] = field(default_factory=list)
    seed: int = 0

    def frequencies(self) -> list[float | None]:
        return [r.exists_freq for r in self.rows]

    def to_records(self, timing: bool = True) -> list[dict]:
        recs = []
        for r in self.rows:
            d = asdict(r)
            if not timing:
                d["elapsed_ms"] = None
            recs.append(d)
        return recs

    def to_csv(self, timing: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for rec in self.to_records(timing):
            w.writerow(["" if rec[f] is None else _fmt(rec[f]) for f in CSV_FIELDS])
        return buf.getvalue()

    def to_json(self, timing: bool = True) -> str:
        return json.dumps({"seed": self.seed, "rows": self.to_records(timing)}, indent=2) + "\n"


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(round(v, 12))
    return str(v)


def _k_key(k: int | Mapping[int, float]) -> tuple[int, ...]:
    if isinstance(k, Mapping):
        return tuple(sorted(k))
    return (k,)


def _k_label(k: int | Mapping[int, float]) -> int | str:
    if isinstance(k, Mapping):
        return "+".join(f"{key}x{k[key]:g}" for key in sorted(k))
    return k


def _sweep_chunk(indices, n, m, k, seed, measure_existence):
    out = np.full((indices.size, 2), np.nan)
    counts = mixed_counts(n, k) if isinstance(k, Mapping) else None
    key = _k_key(k)
    for row, t in enumerate(indices.tolist()):
        s = derive_seed(seed, n, m, *key, t)
        if counts is None:
            profile = generate_incomplete(n, m, k, s)
        else:
            profile = generate_mixed(counts, m, s)
        out[row, 1] = a2_ratio(profile)
        if measure_existence:
            out[row, 0] = exists_popular_fast(profile)
    return out


def _sweep(n, k, alphas, trials, seed, threads, measure_existence) -> SweepReport:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    report = SweepReport(seed=seed)
    for alpha in alphas:
        m = realized_m(n, alpha)
        start = time.perf_counter()
        res = map_trials(_sweep_chunk, trials, threads, (n, m, k, seed, measure_existence))
        elapsed = (time.perf_counter() - start) * 1e3
        a2 = res[:, 1]
        if measure_existence:
            p = float(res[:, 0].mean())
            se = math.sqrt(p * (1 - p) / trials)
        else:
            p = se = None
        report.rows.append(
            SweepRow(
                n=n,
                m=m,
                k=_k_label(k),
                alpha_requested=float(alpha),
                alpha_realized=m / n,
                trials=trials,
                exists_freq=p,
                exists_se=se,
                a2_mean=float(a2.mean()),
                a2_sd=float(a2.std(ddof=1)) if trials > 1 else 0.0,
                elapsed_ms=elapsed,
            )
        )
    if measure_existence:
        for msg in monotonicity_violations(report):
            log.warning(msg)
    return report


def sweep_existence(
    n: int,
    k: int | Mapping[int, float],
    alphas: Sequence[float],
    trials: int,
    seed: int,
    threads: int = 1,
) -> SweepReport:
    """Existence frequency and A2 ratio at each alpha.

    ``k`` may also be a mapping from list length to weight for mixed-length
    instances.  Trial ``t`` at a given ``(n, m)`` always draws the same
    instance, whatever the grid and thread count.
    """
    return _sweep(n, k, alphas, trials, seed, threads, True)


def sweep_a2(
    n: int,
    k: int | Mapping[int, float],
    alphas: Sequence[float],
    trials: int,
    seed: int,
    threads: int = 1,
) -> SweepReport:
    """A2-ratio statistics only; existence columns stay empty."""
    return _sweep(n, k, alphas, trials, seed, threads, False)


def monotonicity_violations(report: SweepReport, n_se: float = 2.0) -> list[str]:
    """Adjacent rows where existence frequency drops by more than ``n_se``
    combined standard errors as alpha increases."""
    rows = sorted(
        (r for r in report.rows if r.exists_freq is not None), key=lambda r: r.alpha_realized
    )
    out = []
    for a, b in zip(rows, rows[1:]):
        slack = n_se * math.hypot(a.exists_se, b.exists_se)
        if b.exists_freq < a.exists_freq - slack:
            out.append(
                f"existence frequency fell from {a.exists_freq:.3f} at alpha={a.alpha_realized:.4f}"
                f" to {b.exists_freq:.3f} at alpha={b.alpha_realized:.4f}"
            )
    return out
