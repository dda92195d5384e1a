"""Popular matchings under random strict preference lists.

Exact existence tests, brute-force oracles for tiny instances, the auxiliary
random graphs and branching process, and Monte Carlo sweeps that locate the
phase transition in the item/person ratio.
"""

from .analysis import (
    SweepReport,
    TransitionCurve,
    alpha_k,
    alpha_star,
    beta_expected,
    sweep_a2,
    sweep_existence,
    transition_curve,
)
from .graph import BipartiteMultigraph, component_stats, giant_component_fraction, has_complex_component
from .instance import (
    PreferenceProfile,
    derive_seed,
    generate_complete,
    generate_incomplete,
    generate_mixed,
    read_profile,
    validate,
    write_profile,
)
from .matching import Matching, Outcome, compare, enumerate_matchings, exists_popular_bruteforce, is_popular_bruteforce, phi
from .random_graphs import (
    branching_simulate,
    offspring_criticality,
    sample_G,
    sample_Gprime,
    solve_survival_fixed_point,
)
from .topchoice import (
    a2_ratio,
    build_top_choice_graph,
    decompose,
    exists_a_perfect_matching,
    exists_popular_fast,
)

__all__ = [
    "a2_ratio",
    "alpha_k",
    "alpha_star",
    "beta_expected",
    "BipartiteMultigraph",
    "branching_simulate",
    "build_top_choice_graph",
    "compare",
    "component_stats",
    "decompose",
    "derive_seed",
    "enumerate_matchings",
    "exists_a_perfect_matching",
    "exists_popular_bruteforce",
    "exists_popular_fast",
    "generate_complete",
    "generate_incomplete",
    "generate_mixed",
    "giant_component_fraction",
    "has_complex_component",
    "is_popular_bruteforce",
    "Matching",
    "offspring_criticality",
    "Outcome",
    "phi",
    "PreferenceProfile",
    "read_profile",
    "sample_G",
    "sample_Gprime",
    "solve_survival_fixed_point",
    "sweep_a2",
    "sweep_existence",
    "SweepReport",
    "transition_curve",
    "TransitionCurve",
    "validate",
    "write_profile",
]

__version__ = "0.1.0"
