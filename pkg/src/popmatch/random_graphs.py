"""Auxiliary random bipartite graphs and the two-type branching process.

``G(x, y, z)`` throws ``z`` edges uniformly, with replacement, between a
left part V of size ``x`` and a right part U of size ``y``.

``G'(x, y, z1, z2)`` adds a third part U' of ``z1 + z2`` vertices: the first
``z1`` edges are drawn as in G, and each of the next ``z2`` edges joins a
uniform vertex of V to a fresh vertex of U'.  It mimics a top-choice graph
with ``z1`` normal and ``z2`` last-resort edges.

The branching process explores such a graph from a V-side root; each
V-vertex has Poisson(c1) children in U and each U-vertex Poisson(c2)
children in V.  Its survival probability ``y`` solves
``1 - y = exp(c1 * (exp(-c2 * y) - 1))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import BipartiteMultigraph, giant_component_fraction, has_complex_component
from .instance import derive_seed
from .parallel import map_trials
from .roots import bisect

__all__ = [
    "BranchingOutcome",
    "GraphTrials",
    "branching_simulate",
    "expected_unpicked",
    "graph_trials",
    "offspring_criticality",
    "sample_G",
    "sample_Gprime",
    "solve_survival_fixed_point",
    "unpicked_counts",
]


def _check_parts(x: int, y: int, z: int) -> None:
    if x < 0 or y < 0 or z < 0:
        raise ValueError("part sizes and edge counts must be non-negative")
    if z > 0 and (x == 0 or y == 0):
        raise ValueError(f"cannot place {z} edges with part sizes x={x}, y={y}")


def sample_G(x: int, y: int, z: int, seed: int) -> BipartiteMultigraph:
    _check_parts(x, y, z)
    rng = np.random.default_rng(seed)
    left = rng.integers(0, max(x, 1), size=z, dtype=np.int64)
    right = rng.integers(0, max(y, 1), size=z, dtype=np.int64)
    return BipartiteMultigraph(x, y, left, right)


def sample_Gprime(x: int, y: int, z1: int, z2: int, seed: int) -> BipartiteMultigraph:
    """Sample G'(x, y, z1, z2); U' occupies right indices ``y .. y+z1+z2-1``."""
    _check_parts(x, y, z1)
    _check_parts(x, 1, z2)
    rng = np.random.default_rng(seed)
    left1 = rng.integers(0, max(x, 1), size=z1, dtype=np.int64)
    right1 = rng.integers(0, max(y, 1), size=z1, dtype=np.int64)
    left2 = rng.integers(0, max(x, 1), size=z2, dtype=np.int64)
    right2 = y + rng.choice(z1 + z2, size=z2, replace=False) if z2 else np.empty(0, np.int64)
    return BipartiteMultigraph(
        x,
        y + z1 + z2,
        np.concatenate([left1, left2]),
        np.concatenate([right1, right2]),
        n_primed=z1 + z2,
    )


@dataclass(frozen=True)
class GraphTrials:
    trials: int
    complex: np.ndarray
    giant: np.ndarray

    @property
    def complex_frequency(self) -> float:
        return float(self.complex.mean())

    @property
    def complex_se(self) -> float:
        p = self.complex_frequency
        return math.sqrt(p * (1 - p) / self.trials)

    @property
    def giant_mean(self) -> float:
        return float(self.giant.mean())


def _graph_chunk(indices, x, y, z1, z2, seed, measure_giant):
    out = np.zeros((indices.size, 2))
    for row, t in enumerate(indices.tolist()):
        s = derive_seed(seed, t)
        g = sample_G(x, y, z1, s) if z2 is None else sample_Gprime(x, y, z1, z2, s)
        out[row, 0] = has_complex_component(g)
        if measure_giant:
            out[row, 1] = giant_component_fraction(g)
    return out


def graph_trials(
    x: int,
    y: int,
    z1: int,
    z2: int | None,
    trials: int,
    seed: int,
    threads: int = 1,
    measure_giant: bool = True,
) -> GraphTrials:
    """Repeat G (``z2 is None``) or G' and record complex-component and
    giant-component statistics; trial ``t`` uses ``derive_seed(seed, t)``."""
    res = map_trials(_graph_chunk, trials, threads, (x, y, z1, z2, seed, measure_giant))
    return GraphTrials(trials, res[:, 0].astype(bool), res[:, 1])


def unpicked_counts(y: int, z: int, trials: int, seed: int) -> np.ndarray:
    """Per trial: how many of ``z`` elements are missed by ``y`` uniform picks."""
    out = np.empty(trials, dtype=np.int64)
    for t in range(trials):
        rng = np.random.default_rng(derive_seed(seed, t))
        picks = rng.integers(0, z, size=y)
        out[t] = z - np.count_nonzero(np.bincount(picks, minlength=z))
    return out


def expected_unpicked(y: int, z: int) -> float:
    """Exact mean of :func:`unpicked_counts`: ``z (1 - 1/z)^y``."""
    return z * (1.0 - 1.0 / z) ** y


def offspring_criticality(c1: float, c2: float) -> str:
    """Classify the two-type process by its growth rate sqrt(c1 * c2)."""
    if c1 < 0 or c2 < 0:
        raise ValueError("offspring means must be non-negative")
    product = c1 * c2
    if product > 1:
        return "supercritical"
    if product < 1:
        return "subcritical"
    return "critical"


def solve_survival_fixed_point(c1: float, c2: float) -> float:
    """Survival probability from a V-side root.

    Zero when ``c1 * c2 <= 1``; otherwise the unique root in (0, 1) of
    ``1 - y - exp(c1 * (exp(-c2 * y) - 1))``.  The U-side survival is
    ``solve_survival_fixed_point(c2, c1)``.
    """
    if c1 < 0 or c2 < 0:
        raise ValueError("offspring means must be non-negative")
    if c1 * c2 <= 1:
        return 0.0

    def g(y):
        return 1.0 - y - math.exp(c1 * (math.exp(-c2 * y) - 1.0))

    lo, hi = 1e-9, 1.0 - 1e-9
    if g(lo) <= 0:
        # barely supercritical: survival below the bracket resolution
        return 0.0
    if g(hi) >= 0:
        hi = 1.0
    return bisect(g, lo, hi)


@dataclass(frozen=True)
class BranchingOutcome:
    survived: np.ndarray
    progeny: np.ndarray
    cap: int

    @property
    def trials(self) -> int:
        return int(self.survived.size)

    @property
    def survival_frequency(self) -> float:
        return float(self.survived.mean()) if self.trials else 0.0

    @property
    def survival_se(self) -> float:
        p = self.survival_frequency
        return math.sqrt(p * (1 - p) / self.trials) if self.trials else 0.0

    def progeny_histogram(self) -> dict[int, int]:
        """Total-progeny counts over the extinct trials."""
        values, counts = np.unique(self.progeny[~self.survived], return_counts=True)
        return dict(zip(values.tolist(), counts.tolist()))


def _branch_one(rng, c1, c2, cap, edges):
    total = current = 1
    side = 0
    while current and total <= cap:
        mean = c1 if side == 0 else c2
        if edges is None:
            current = int(rng.poisson(mean * current))
        else:
            # the sum of `current` Binomial(edges, mean/edges) degrees
            current = int(rng.binomial(edges * current, mean / edges))
        total += current
        side ^= 1
    return total > cap, total


def _branch_chunk(indices, c1, c2, cap, seed, edges):
    out = np.zeros((indices.size, 2), dtype=np.int64)
    for row, t in enumerate(indices.tolist()):
        rng = np.random.default_rng(derive_seed(seed, t))
        out[row] = _branch_one(rng, c1, c2, cap, edges)
    return out


def branching_simulate(
    c1: float,
    c2: float,
    trials: int,
    cap: int = 10_000,
    seed: int = 0,
    edges: int | None = None,
    threads: int = 1,
) -> BranchingOutcome:
    """Run the alternating two-type Galton-Watson process ``trials`` times.

    A trial whose total progeny exceeds ``cap`` counts as surviving.  With
    ``edges`` set, offspring are Binomial(edges, c/edges) instead of Poisson,
    matching the exact degree law of ``G(x, y, edges)``.
    """
    if c1 < 0 or c2 < 0:
        raise ValueError("offspring means must be non-negative")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if edges is not None and (edges < 1 or max(c1, c2) > edges):
        raise ValueError("binomial offspring need edges >= max(c1, c2) and edges >= 1")
    res = map_trials(_branch_chunk, trials, threads, (c1, c2, cap, seed, edges))
    return BranchingOutcome(res[:, 0].astype(bool), res[:, 1], cap)
