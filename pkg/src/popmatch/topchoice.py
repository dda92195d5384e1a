"""First/second-choice decomposition and the top-choice graph.

``f(a)`` is the head of a's list and ``F`` the set of all heads.  ``s(a)`` is
the best item on a's list outside ``F``, or a's last resort when the whole
list lies inside ``F`` (those people form ``A1``; the rest form ``A2``).

A popular matching exists iff some matching gives every person ``f(a)`` or
``s(a)``, iff the top-choice graph (one edge ``f(a) -- s(a)`` per person) has
no complex component.  :func:`exists_popular_fast` uses the counting test;
:func:`exists_a_perfect_matching` searches for the assignment directly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .graph import BipartiteMultigraph, find_complex_component, has_complex_component
from .instance import PreferenceProfile
from .matching import Matching

__all__ = [
    "FSDecomposition",
    "SelfCheckError",
    "TopChoiceGraph",
    "a2_ratio",
    "build_top_choice_graph",
    "complex_component_root",
    "decompose",
    "exists_a_perfect_matching",
    "exists_popular_fast",
]

# Cross-check every fast verdict against the matching search (debug runs).
SELF_CHECK = os.environ.get("POPMATCH_SELF_CHECK", "") not in ("", "0")


class SelfCheckError(AssertionError):
    """The counting test and the matching search disagreed."""


@dataclass(frozen=True, eq=False)
class FSDecomposition:
    m: int
    f: np.ndarray
    s: np.ndarray  # item index, or m + a for a last resort
    in_first: np.ndarray  # boolean mask over items: membership in F

    @property
    def n(self) -> int:
        return int(self.f.size)

    @property
    def a1_mask(self) -> np.ndarray:
        return self.s >= self.m

    @property
    def A1(self) -> np.ndarray:
        return np.flatnonzero(self.a1_mask)

    @property
    def A2(self) -> np.ndarray:
        return np.flatnonzero(~self.a1_mask)

    @property
    def F(self) -> np.ndarray:
        return np.flatnonzero(self.in_first)

    @property
    def size_F(self) -> int:
        return int(self.in_first.sum())

    @property
    def size_S(self) -> int:
        return self.m - self.size_F

    def in_S(self, item: int) -> bool:
        return 0 <= item < self.m and not self.in_first[item]


def decompose(profile: PreferenceProfile) -> FSDecomposition:
    """Compute f, F, s, A1 and A2 in one pass over all list entries."""
    items, offsets, m, n = profile.items, profile.offsets, profile.m, profile.n
    f = items[offsets[:-1]]
    in_first = np.zeros(m, dtype=bool)
    in_first[f] = True
    k = profile.uniform_length()
    if k is not None:
        table = items.reshape(n, k)
        outside = ~in_first[table]
        has = outside.any(axis=1)
        col = np.argmax(outside, axis=1)
        s = np.where(has, table[np.arange(n), col], m + np.arange(n))
        return FSDecomposition(m, f, s, in_first)
    pos = np.arange(items.size, dtype=np.int64)
    outside = np.where(in_first[items], items.size, pos)
    best = np.minimum.reduceat(outside, offsets[:-1])
    s = np.where(best < items.size, items[np.minimum(best, items.size - 1)], m + np.arange(n))
    return FSDecomposition(m, f, s, in_first)


def a2_ratio(profile: PreferenceProfile) -> float:
    """Fraction of people whose list reaches outside F."""
    d = decompose(profile)
    return float(np.count_nonzero(~d.a1_mask)) / profile.n


@dataclass(frozen=True, eq=False)
class TopChoiceGraph:
    """Bipartite multigraph with parts B and S + L.

    Right vertex ``j`` stands for the item-or-last-resort ``right_labels[j]``;
    S items come first in increasing order, then l_0 .. l_{n-1}.  Edge ``a``
    belongs to person ``a``.
    """

    decomposition: FSDecomposition
    graph: BipartiteMultigraph
    right_labels: np.ndarray

    @property
    def normal(self) -> np.ndarray:
        return ~self.decomposition.a1_mask

    @property
    def n_normal(self) -> int:
        return int(np.count_nonzero(self.normal))

    @property
    def n_last_resort(self) -> int:
        return self.graph.n_edges - self.n_normal


def build_top_choice_graph(profile: PreferenceProfile) -> TopChoiceGraph:
    d = decompose(profile)
    m, n = profile.m, profile.n
    s_items = np.flatnonzero(~d.in_first)
    # right index of every item in S, and of every last resort
    index_of = np.full(m + n, -1, dtype=np.int64)
    index_of[s_items] = np.arange(s_items.size)
    index_of[m:] = s_items.size + np.arange(n)
    right = index_of[d.s]
    labels = np.concatenate([s_items, m + np.arange(n)])
    graph = BipartiteMultigraph(m, s_items.size + n, d.f, right, n_primed=n)
    return TopChoiceGraph(d, graph, labels)


def exists_a_perfect_matching(profile: PreferenceProfile) -> tuple[bool, Matching | None]:
    """Search for a matching that gives everyone f(a) or s(a).

    Each person has two options.  People are seated in index order, taking
    the first free option when there is one and otherwise augmenting along
    an alternating path, so the witness is deterministic.
    """
    d = decompose(profile)
    options = list(zip(d.f.tolist(), d.s.tolist()))
    owner: dict[int, int] = {}
    item_of = [-1] * profile.n
    for root in range(profile.n):
        direct = next((b for b in options[root] if b not in owner), None)
        if direct is not None:
            owner[direct] = root
            item_of[root] = direct
            continue
        # Frames are [person, next option, item taken]; the live stack is
        # always the alternating path from the root.
        visited: set[int] = set()
        stack = [[root, 0, -1]]
        free = False
        while stack:
            frame = stack[-1]
            a, i = frame[0], frame[1]
            if i == 2:
                stack.pop()
                continue
            frame[1] += 1
            b = options[a][i]
            if b in visited:
                continue
            visited.add(b)
            frame[2] = b
            if b not in owner:
                free = True
                break
            stack.append([owner[b], 0, -1])
        if not free:
            return False, None
        for a, _, b in stack:
            owner[b] = a
            item_of[a] = b
    return True, Matching(tuple(item_of))


def exists_popular_fast(profile: PreferenceProfile, self_check: bool | None = None) -> bool:
    """True iff the top-choice graph has no complex component."""
    exists = not has_complex_component(build_top_choice_graph(profile).graph)
    if SELF_CHECK if self_check is None else self_check:
        direct, _ = exists_a_perfect_matching(profile)
        if direct != exists:
            raise SelfCheckError(
                f"component test says {exists}, A-perfect search says {direct}"
            )
    return exists


def complex_component_root(profile: PreferenceProfile) -> int | None:
    return find_complex_component(build_top_choice_graph(profile).graph)
