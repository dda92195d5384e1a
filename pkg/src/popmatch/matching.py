"""Matchings, the head-to-head popularity vote and exhaustive oracles.

A matching assigns every person either a listed real item or their own last
resort ``m + a``.  Leaving someone unmatched is never needed: for the vote
it is equivalent to the last resort, since both rank below every listed item.

The brute-force routines are only meant for tiny instances; they enumerate
every matching and compare them pairwise with numpy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

import numpy as np

from .instance import PreferenceProfile

__all__ = [
    "DEFAULT_CAP",
    "EnumerationCapExceeded",
    "Matching",
    "Outcome",
    "check_matching",
    "compare",
    "enumerate_matchings",
    "exists_popular_bruteforce",
    "is_popular_bruteforce",
    "phi",
    "rank_vector",
    "search_space_size",
]

DEFAULT_CAP = 10**6

# Pairwise comparison block: rows * matchings * n booleans at a time.
_BLOCK_CELLS = 1 << 22


class Outcome(Enum):
    WINS = "wins"
    LOSES = "loses"
    TIES = "ties"


class EnumerationCapExceeded(ValueError):
    def __init__(self, required: int, cap: int):
        super().__init__(f"search space of {required} assignments exceeds cap {cap}")
        self.required = required
        self.cap = cap


@dataclass(frozen=True)
class Matching:
    """Per-person assignment; entry ``a`` is a real item or ``m + a``."""

    assignment: tuple[int, ...]

    def __len__(self):
        return len(self.assignment)

    def __getitem__(self, a: int) -> int:
        return self.assignment[a]

    def person_of(self, item: int) -> int | None:
        for a, b in enumerate(self.assignment):
            if b == item:
                return a
        return None

    def describe(self, m: int) -> str:
        parts = []
        for a, b in enumerate(self.assignment):
            parts.append(f"a{a}->" + (f"b{b}" if b < m else f"l{a}"))
        return "{" + ", ".join(parts) + "}"


def check_matching(matching: Matching, profile: PreferenceProfile) -> None:
    """Raise ValueError unless ``matching`` is valid for ``profile``."""
    if len(matching) != profile.n:
        raise ValueError(f"matching covers {len(matching)} people, profile has {profile.n}")
    seen = set()
    for a, b in enumerate(matching.assignment):
        if b == profile.m + a:
            continue
        if not 0 <= b < profile.m:
            raise ValueError(f"person {a}: assignment {b} is neither a real item nor l_{a}")
        if b in seen:
            raise ValueError(f"item {b} assigned twice")
        if b not in profile.preference_list(a):
            raise ValueError(f"person {a}: item {b} is not on their list")
        seen.add(b)


def rank_vector(matching: Matching, profile: PreferenceProfile) -> np.ndarray:
    """Rank each person gives their assigned item (last resort = len + 1)."""
    ranks = np.empty(profile.n, dtype=np.int64)
    for a, b in enumerate(matching.assignment):
        lst = profile.preference_list(a)
        if b == profile.m + a:
            ranks[a] = lst.size + 1
        else:
            hit = np.flatnonzero(lst == b)
            if hit.size == 0:
                raise ValueError(f"person {a}: item {b} is not on their list")
            ranks[a] = hit[0] + 1
    return ranks


def phi(matching: Matching, other: Matching, profile: PreferenceProfile) -> int:
    """Number of people who strictly prefer ``matching`` to ``other``."""
    check_matching(matching, profile)
    check_matching(other, profile)
    return int(np.sum(rank_vector(matching, profile) < rank_vector(other, profile)))


def compare(matching: Matching, other: Matching, profile: PreferenceProfile) -> Outcome:
    ours = phi(matching, other, profile)
    theirs = phi(other, matching, profile)
    if ours > theirs:
        return Outcome.WINS
    if ours < theirs:
        return Outcome.LOSES
    return Outcome.TIES


def search_space_size(profile: PreferenceProfile) -> int:
    return math.prod(int(length) + 1 for length in profile.lengths)


def _check_cap(profile: PreferenceProfile, cap: int) -> None:
    required = search_space_size(profile)
    if required > cap:
        raise EnumerationCapExceeded(required, cap)


def _enumerate_ranks(profile: PreferenceProfile) -> Iterator[tuple[int, ...]]:
    # Depth-first over people in index order, choices in rank order with the
    # last resort tried last; yields 1-based rank tuples.
    lists = profile.lists
    n = profile.n
    used: set[int] = set()
    ranks = [0] * n

    def rec(a: int):
        if a == n:
            yield tuple(ranks)
            return
        lst = lists[a]
        for pos, b in enumerate(lst):
            if b in used:
                continue
            used.add(b)
            ranks[a] = pos + 1
            yield from rec(a + 1)
            used.discard(b)
        ranks[a] = len(lst) + 1
        yield from rec(a + 1)

    yield from rec(0)


def _ranks_to_matching(ranks: tuple[int, ...], profile: PreferenceProfile) -> Matching:
    lists = profile.lists
    return Matching(
        tuple(
            lists[a][r - 1] if r <= len(lists[a]) else profile.m + a
            for a, r in enumerate(ranks)
        )
    )


def enumerate_matchings(profile: PreferenceProfile, cap: int = DEFAULT_CAP) -> Iterator[Matching]:
    """Yield every valid matching exactly once, in deterministic order."""
    _check_cap(profile, cap)
    for ranks in _enumerate_ranks(profile):
        yield _ranks_to_matching(ranks, profile)


def _rank_table(profile: PreferenceProfile, cap: int) -> np.ndarray:
    _check_cap(profile, cap)
    table = np.array(list(_enumerate_ranks(profile)), dtype=np.int32)
    return table.reshape(-1, profile.n)


def _beaten(candidates: np.ndarray, table: np.ndarray) -> np.ndarray:
    # For each candidate row: does some row of ``table`` win over it?
    rows_per_block = max(1, _BLOCK_CELLS // max(1, table.size))
    beaten = np.zeros(len(candidates), dtype=bool)
    for start in range(0, len(candidates), rows_per_block):
        block = candidates[start:start + rows_per_block, None, :]
        ours = np.sum(block < table[None, :, :], axis=2)
        theirs = np.sum(table[None, :, :] < block, axis=2)
        beaten[start:start + rows_per_block] = np.any(theirs > ours, axis=1)
    return beaten


def is_popular_bruteforce(matching: Matching, profile: PreferenceProfile, cap: int = DEFAULT_CAP) -> bool:
    """True iff ``matching`` loses to no other matching."""
    check_matching(matching, profile)
    table = _rank_table(profile, cap)
    mine = rank_vector(matching, profile).astype(np.int32)[None, :]
    return not bool(_beaten(mine, table)[0])


def exists_popular_bruteforce(
    profile: PreferenceProfile, cap: int = DEFAULT_CAP
) -> tuple[bool, Matching | None]:
    """Search every matching for a popular one.

    Returns ``(True, witness)`` with the first popular matching in
    enumeration order, or ``(False, None)``.
    """
    table = _rank_table(profile, cap)
    beaten = _beaten(table, table)
    idx = np.flatnonzero(~beaten)
    if idx.size == 0:
        return False, None
    ranks = tuple(int(r) for r in table[idx[0]])
    return True, _ranks_to_matching(ranks, profile)
