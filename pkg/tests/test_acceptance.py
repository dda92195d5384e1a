"""Acceptance criteria, one test per criterion (criterion 7 split by clause).

Each test records a PASS/FAIL line that is repeated in the terminal summary.
Run standalone with ``python tests/test_acceptance.py``.
"""

import contextlib
import io
import math
import statistics
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from popmatch.analysis import alpha_k, alpha_star, beta_expected, sweep_a2, sweep_existence, transition_curve
from popmatch.cli import main
from popmatch.graph import has_complex_component
from popmatch.instance import PreferenceProfile, generate_incomplete
from popmatch.matching import exists_popular_bruteforce
from popmatch.parallel import default_threads
from popmatch.random_graphs import (
    branching_simulate,
    expected_unpicked,
    graph_trials,
    solve_survival_fixed_point,
    unpicked_counts,
)
from popmatch.topchoice import build_top_choice_graph, exists_a_perfect_matching, exists_popular_fast

SEED = 0
THREADS = default_threads()
_C7_ELAPSED: list[float] = []


def _median_time(func, repeats=7):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        func()
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def test_criterion_1_alpha_star(acceptance):
    a = alpha_star()
    residual = abs(a * a * math.exp(-1 / a) - 1)
    elapsed = _median_time(alpha_star)
    ok = abs(a - 1.42) <= 0.01 and residual <= 1e-12 and elapsed < 1e-3
    acceptance(1, "alpha_star = 1.42 +- 0.01", ok,
               f"value={a:.12f} residual={residual:.1e} time={elapsed * 1e3:.3f} ms")
    assert ok


def _all_alpha_k():
    return [(k, alpha_k(k)) for k in range(1, 101)]


def test_criterion_2_no_root_regime(acceptance):
    rows = _all_alpha_k()
    elapsed = _median_time(_all_alpha_k)
    no_root = [k for k, a in rows if a is None]
    numeric_ok = all(a is not None for k, a in rows if k >= 4)
    curve = transition_curve(100)
    gap = abs(alpha_k(100) - alpha_star())
    ok = no_root == [1, 2, 3] and numeric_ok and curve.is_increasing() and gap <= 0.01 and elapsed < 1e-2
    acceptance(2, "no root for k<=3, increasing curve converging to alpha_star", ok,
               f"no_root={no_root} |alpha_100 - alpha_star|={gap:.1e} time={elapsed * 1e3:.2f} ms")
    assert ok


def _edge_cases():
    P = PreferenceProfile.from_lists
    yield P(3, [[0, 1, 2]] * 3)
    yield P(2, [[0, 1]] * 2)
    yield P(4, [[0, 1, 2]] * 4)
    yield P(5, [[0, 1]] * 4)
    yield P(3, [[0, 1], [1, 0]])
    yield P(2, [[0], [1]])
    yield P(4, [[0, 1], [1, 0], [0], [1]])
    yield P(5, [[0], [0], [0], [0]])
    yield P(1, [[0]])


def _random_small(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 5))
    m = int(rng.integers(n, 6))
    k = int(rng.integers(1, min(3, m) + 1))
    return generate_incomplete(n, m, k, seed)


def test_criterion_3_bruteforce_oracle(acceptance):
    start = time.perf_counter()
    disagreements, exists = [], 0
    profiles = [_random_small(s) for s in range(10_000)] + list(_edge_cases())
    for i, p in enumerate(profiles):
        brute = exists_popular_bruteforce(p)[0]
        exists += brute
        if brute != exists_popular_fast(p):
            disagreements.append(i)
    elapsed = time.perf_counter() - start
    ok = not disagreements and elapsed < 60
    acceptance(3, "brute force vs top-choice test", ok,
               f"profiles={len(profiles)} exist={exists} disagreements={len(disagreements)} time={elapsed:.1f} s")
    assert ok


def test_criterion_4_structural_equivalence(acceptance):
    rng = np.random.default_rng(SEED)
    start = time.perf_counter()
    disagreements, exists = 0, 0
    for t in range(10_000):
        n = int(rng.integers(1, 201))
        m = max(n, int(round(float(rng.uniform(1.0, 1.8)) * n)))
        k = int(rng.integers(1, min(6, m) + 1))
        p = generate_incomplete(n, m, k, t)
        perfect = exists_a_perfect_matching(p)[0]
        exists += perfect
        disagreements += perfect == has_complex_component(build_top_choice_graph(p).graph)
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and elapsed < 30
    acceptance(4, "A-perfect search vs complex-component test", ok,
               f"profiles=10000 exist={exists} disagreements={disagreements} time={elapsed:.1f} s")
    assert ok


def test_criterion_5_a2_concentration(acceptance):
    start = time.perf_counter()
    worst = 0.0
    for k in (2, 4, 8):
        report = sweep_a2(100_000, k, [1.0, 1.5, 2.0], trials=200, seed=SEED, threads=THREADS)
        for row in report.rows:
            worst = max(worst, abs(row.a2_mean - beta_expected(row.alpha_realized, k)))
    elapsed = time.perf_counter() - start
    ok = worst <= 0.02 and elapsed < 120
    acceptance(5, "mean A2 ratio within 0.02 of beta_expected", ok,
               f"max deviation={worst:.5f} time={elapsed:.1f} s")
    assert ok


def test_criterion_6_balls_in_bins(acceptance):
    start = time.perf_counter()
    counts = unpicked_counts(10_000, 10_000, trials=1000, seed=SEED)
    elapsed = time.perf_counter() - start
    exact = expected_unpicked(10_000, 10_000)
    se = counts.std(ddof=1) / math.sqrt(counts.size)
    z = (counts.mean() - exact) / se
    ok = abs(z) <= 3 and elapsed < 10
    acceptance(6, "unpicked count matches z(1-1/z)^y", ok,
               f"mean={counts.mean():.2f} exact={exact:.2f} z={z:+.2f} time={elapsed:.2f} s")
    assert ok


def test_criterion_7_k5_gap(acceptance):
    a5 = alpha_k(5)
    start = time.perf_counter()
    above = sweep_existence(2000, 5, [a5 + 0.3], 200, SEED, THREADS).rows[0]
    below = sweep_existence(2000, 5, [max(1.0, a5 - 0.3)], 200, SEED, THREADS).rows[0]
    _C7_ELAPSED.append(time.perf_counter() - start)
    ok = above.exists_freq >= 0.9 and below.exists_freq <= 0.1
    acceptance("7a", "k=5 existence >= 0.9 above and <= 0.1 below alpha_5", ok,
               f"freq at {above.alpha_realized:.4f} = {above.exists_freq:.3f}, "
               f"at {below.alpha_realized:.4f} = {below.exists_freq:.3f}")
    assert ok


def test_criterion_7_k3_always_exists(acceptance):
    start = time.perf_counter()
    row = sweep_existence(2000, 3, [1.0], 200, SEED, THREADS).rows[0]
    _C7_ELAPSED.append(time.perf_counter() - start)
    total = sum(_C7_ELAPSED)
    ok = row.exists_freq >= 0.9 and total < 300
    acceptance("7b", "k=3, alpha=1 existence >= 0.9", ok,
               f"freq={row.exists_freq:.3f} +- {row.exists_se:.3f} criterion-7 time={total:.1f} s")
    assert ok


def test_criterion_8_auxiliary_graphs(acceptance):
    m = n = 10_000
    h = math.floor(math.exp(-1.0) * m)
    start = time.perf_counter()
    freqs = {}
    for beta in (0.4, 0.9):
        z1 = round(beta * n)
        res = graph_trials(m, h, z1, n - z1, 200, SEED, THREADS, measure_giant=False)
        freqs[beta] = res.complex_frequency
    elapsed = time.perf_counter() - start
    ok = freqs[0.4] <= 0.1 and freqs[0.9] >= 0.9 and elapsed < 120
    acceptance(8, "complex components in G' below/above the threshold", ok,
               f"beta=0.4: {freqs[0.4]:.3f}  beta=0.9: {freqs[0.9]:.3f} time={elapsed:.1f} s")
    assert ok


def test_criterion_9_branching(acceptance):
    start = time.perf_counter()
    diffs = {}
    for c1, c2 in ((2.0, 2.0), (1.5, 1.2)):
        out = branching_simulate(c1, c2, 10_000, cap=10_000, seed=SEED, threads=THREADS)
        diffs[(c1, c2)] = abs(out.survival_frequency - solve_survival_fixed_point(c1, c2))
    sub = branching_simulate(0.5, 1.9, 10_000, cap=10_000, seed=SEED, threads=THREADS).survival_frequency
    elapsed = time.perf_counter() - start
    ok = all(d <= 0.02 for d in diffs.values()) and sub <= 0.01 and elapsed < 30
    acceptance(9, "branching survival vs fixed point", ok,
               f"|diff|(2,2)={diffs[(2.0, 2.0)]:.4f} |diff|(1.5,1.2)={diffs[(1.5, 1.2)]:.4f} "
               f"subcritical={sub:.4f} time={elapsed:.1f} s")
    assert ok


def _cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue()


def test_criterion_10_reproducibility(acceptance, tmp_path):
    profile = tmp_path / "p.txt"
    _cli(["gen", "--n", "4", "--m", "5", "--k", "3", "--seed", "11", "-o", str(profile)])
    threaded = [
        ["sweep", "--n", "300", "--k", "5", "--alpha", "1.0:1.6:0.1", "--trials", "20", "--seed", "2"],
        ["sweep", "--n", "300", "--k", "4", "--alpha", "1.2,1.5", "--trials", "20", "--format", "json"],
        ["sweep", "--n", "300", "--k", "5", "--alpha", "1.0:1.6:0.2", "--trials", "10", "--format", "svg"],
        ["sweep", "--n", "300", "--k", "2", "--alpha", "1.0,2.0", "--trials", "10", "--a2-only"],
        ["graphsim", "--x", "300", "--y", "110", "--z", "150", "--z2", "150", "--trials", "30"],
        ["graphsim", "--x", "50", "--y", "20", "--z", "40", "--trials", "30"],
        ["branch", "--c1", "2", "--c2", "2", "--trials", "500", "--cap", "1000"],
    ]
    serial = [
        ["gen", "--n", "30", "--m", "40", "--k", "4", "--seed", "5"],
        ["gen", "--n", "5", "--m", "6", "--complete"],
        ["gen", "--lengths", "2:3,4:3", "--m", "8"],
        ["check", str(profile), "--brute", "--witness"],
        ["alpha", "--k", "1:30"],
        ["alpha", "--k", "1:30", "--format", "csv"],
        ["alpha", "--k", "1:30", "--format", "json"],
        ["alpha", "--k", "1:30", "--format", "svg"],
    ]
    failures = []
    for argv in serial + [a + ["--threads", "1"] for a in threaded]:
        first, second = _cli(argv), _cli(argv)
        if first[0] != 0 or first != second:
            failures.append(" ".join(argv))
    for argv in threaded:
        if _cli(argv + ["--threads", "1"]) != _cli(argv + ["--threads", "3"]):
            failures.append(" ".join(argv) + " (threads 1 vs 3)")
    ok = not failures
    acceptance(10, "CLI reruns byte-identical; thread count does not change results", ok,
               f"commands={len(serial) + len(threaded)} failures={failures}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([str(Path(__file__)), "-q", "-p", "no:cacheprovider"]))
