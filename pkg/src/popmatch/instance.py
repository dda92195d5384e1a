"""Preference profiles and the random instance generators.

A profile holds ``n`` people and ``m`` real items.  Person ``a`` ranks a
strict list of distinct item indices; position 0 is rank 1.  Every person
also owns a virtual last-resort item encoded as ``m + a`` which ranks just
below the last entry of their list.  Last resorts are never stored in the
lists themselves.

Lists are stored flat (``items``) with CSR-style ``offsets`` so that profiles
with hundreds of thousands of people stay cheap to build and to scan.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, TextIO

import numpy as np

__all__ = [
    "PreferenceProfile",
    "ProfileParseError",
    "derive_seed",
    "generate_complete",
    "generate_incomplete",
    "generate_mixed",
    "is_last_resort",
    "last_resort",
    "last_resort_rank",
    "read_profile",
    "sample_k_permutations",
    "validate",
    "write_profile",
]

# Above this list length the vectorised samplers (O(rows * k^2)) lose to
# numpy's per-row sampler.
_SWAP_TABLE_MAX_K = 32


class ProfileParseError(ValueError):
    """Raised when a profile file cannot be parsed or violates an invariant."""


@dataclass(frozen=True, eq=False)
class PreferenceProfile:
    n: int
    m: int
    items: np.ndarray
    offsets: np.ndarray

    def __post_init__(self):
        items = np.ascontiguousarray(self.items, dtype=np.int64)
        offsets = np.ascontiguousarray(self.offsets, dtype=np.int64)
        if offsets.shape != (self.n + 1,) or offsets[0] != 0 or offsets[-1] != items.size:
            raise ValueError("offsets must have n + 1 entries spanning items")
        if np.any(np.diff(offsets) < 0):
            raise ValueError("offsets must be non-decreasing")
        items.setflags(write=False)
        offsets.setflags(write=False)
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "offsets", offsets)

    @classmethod
    def from_lists(cls, m: int, lists: Sequence[Sequence[int]]) -> "PreferenceProfile":
        lengths = np.array([len(p) for p in lists], dtype=np.int64)
        offsets = np.concatenate([[0], np.cumsum(lengths)])
        flat = [b for p in lists for b in p]
        return cls(len(lists), m, np.array(flat, dtype=np.int64), offsets)

    @classmethod
    def from_array(cls, m: int, table: np.ndarray) -> "PreferenceProfile":
        """Build a profile where every person has a list of the same length."""
        table = np.asarray(table, dtype=np.int64)
        n, k = table.shape
        return cls(n, m, table.reshape(-1), np.arange(n + 1, dtype=np.int64) * k)

    @property
    def lengths(self) -> np.ndarray:
        return np.diff(self.offsets)

    @property
    def alpha(self) -> float:
        return self.m / self.n

    @property
    def lists(self) -> list[list[int]]:
        flat = self.items.tolist()
        off = self.offsets.tolist()
        return [flat[off[a]:off[a + 1]] for a in range(self.n)]

    def preference_list(self, a: int) -> np.ndarray:
        return self.items[self.offsets[a]:self.offsets[a + 1]]

    def first_choices(self) -> np.ndarray:
        return self.items[self.offsets[:-1]]

    def uniform_length(self) -> int | None:
        """The common list length, or None if lengths differ."""
        lengths = self.lengths
        if lengths.size and np.all(lengths == lengths[0]):
            return int(lengths[0])
        return None

    def as_array(self) -> np.ndarray:
        k = self.uniform_length()
        if k is None:
            raise ValueError("profile has lists of differing lengths")
        return self.items.reshape(self.n, k)

    def __eq__(self, other):
        if not isinstance(other, PreferenceProfile):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and np.array_equal(self.offsets, other.offsets)
            and np.array_equal(self.items, other.items)
        )

    def __hash__(self):
        return hash((self.n, self.m, self.items.tobytes(), self.offsets.tobytes()))

    def __repr__(self):
        return f"PreferenceProfile(n={self.n}, m={self.m}, total_length={self.items.size})"


def last_resort(profile: PreferenceProfile, a: int) -> int:
    return profile.m + a


def is_last_resort(profile: PreferenceProfile, item: int) -> bool:
    return item >= profile.m


def last_resort_rank(profile: PreferenceProfile, a: int) -> int:
    return int(profile.offsets[a + 1] - profile.offsets[a]) + 1


def validate(profile: PreferenceProfile) -> str | None:
    """Return None if ``profile`` satisfies every invariant, else a description
    of the first violation (naming the offending person where there is one)."""
    if profile.n < 1:
        return "profile must contain at least one person"
    if profile.m < profile.n:
        return f"need m >= n, got n={profile.n}, m={profile.m}"
    for a in range(profile.n):
        lst = profile.preference_list(a)
        if lst.size == 0:
            return f"person {a}: empty preference list"
        if lst.min() < 0 or lst.max() >= profile.m:
            bad = int(lst[(lst < 0) | (lst >= profile.m)][0])
            return f"person {a}: item {bad} out of range [0, {profile.m})"
        if np.unique(lst).size != lst.size:
            return f"person {a}: duplicate item in preference list"
    return None


def derive_seed(seed: int, *keys: int) -> int:
    """Deterministic 63-bit child seed for ``(seed, *keys)``.

    Independent of evaluation order, so trials can be farmed out in any order
    and still reproduce a serial run bit for bit.
    """
    if seed < 0 or any(k < 0 for k in keys):
        raise ValueError("seeds and keys must be non-negative")
    ss = np.random.SeedSequence(entropy=seed, spawn_key=tuple(keys))
    return int(ss.generate_state(1, np.uint64)[0] >> np.uint64(1))


def _rng(seed: int) -> np.random.Generator:
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    return np.random.default_rng(seed)


def _lookup(keys: np.ndarray, vals: np.ndarray, j: int, pos: np.ndarray) -> np.ndarray:
    # Current content of virtual position ``pos`` in each row's permuted
    # array, given the first ``j`` recorded swaps (latest record wins).
    if j == 0:
        return pos.copy()
    hit = keys[:, :j] == pos[:, None]
    found = hit.any(axis=1)
    last = j - 1 - np.argmax(hit[:, ::-1], axis=1)
    out = pos.copy()
    rows = np.flatnonzero(found)
    out[rows] = vals[rows, last[rows]]
    return out


def _distinct_probability(m: int, k: int) -> float:
    p = 1.0
    for j in range(1, k):
        p *= 1.0 - j / m
        if p < 0.5:
            break
    return p


def _sample_by_rejection(rng: np.random.Generator, rows: int, m: int, k: int) -> np.ndarray:
    # Uniform k-tuples conditioned on distinct entries are uniform
    # k-permutations; rows with a repeat are redrawn whole.
    out = rng.integers(0, m, size=(rows, k), dtype=np.int64)
    pending = np.arange(rows)
    while True:
        block = out[pending]
        dup = np.zeros(pending.size, dtype=bool)
        for i in range(k):
            for j in range(i + 1, k):
                dup |= block[:, i] == block[:, j]
        pending = pending[dup]
        if pending.size == 0:
            return out
        out[pending] = rng.integers(0, m, size=(pending.size, k), dtype=np.int64)


def sample_k_permutations(rng: np.random.Generator, rows: int, m: int, k: int) -> np.ndarray:
    """Draw ``rows`` independent uniform k-permutations of ``range(m)``.

    When repeats are rare (k much smaller than sqrt(m)) whole rows are drawn
    with replacement and redrawn on a repeat.  Otherwise short lists use a
    partial Fisher-Yates shuffle run across all rows at once, with the
    swapped-out positions kept in a (rows, k) table instead of an m-sized
    array per row.  Long lists fall back to numpy's per-row sampler.
    """
    if not 1 <= k <= m:
        raise ValueError(f"need 1 <= k <= m, got k={k}, m={m}")
    out = np.empty((rows, k), dtype=np.int64)
    if rows == 0:
        return out
    if k <= _SWAP_TABLE_MAX_K and _distinct_probability(m, k) >= 0.5:
        return _sample_by_rejection(rng, rows, m, k)
    if k > _SWAP_TABLE_MAX_K:
        for r in range(rows):
            out[r] = rng.choice(m, size=k, replace=False)
        return out
    keys = np.full((rows, k), -1, dtype=np.int64)
    vals = np.empty((rows, k), dtype=np.int64)
    pos_j = np.empty(rows, dtype=np.int64)
    for j in range(k):
        r = j + rng.integers(0, m - j, size=rows, dtype=np.int64)
        pos_j.fill(j)
        at_r = _lookup(keys, vals, j, r)
        at_j = _lookup(keys, vals, j, pos_j)
        out[:, j] = at_r
        keys[:, j] = r
        vals[:, j] = at_j
    return out


def _check_sizes(n: int, m: int) -> None:
    if n < 1:
        raise ValueError(f"need at least one person, got n={n}")
    if n > m:
        raise ValueError(f"need n <= m (alpha >= 1), got n={n}, m={m}")


def generate_incomplete(n: int, m: int, k: int, seed: int) -> PreferenceProfile:
    """Random instance where each list is an independent uniform k-permutation."""
    _check_sizes(n, m)
    if not 1 <= k <= m:
        raise ValueError(f"need 1 <= k <= m, got k={k}, m={m}")
    table = sample_k_permutations(_rng(seed), n, m, k)
    return PreferenceProfile.from_array(m, table)


def generate_complete(n: int, m: int, seed: int) -> PreferenceProfile:
    return generate_incomplete(n, m, m, seed)


def generate_mixed(n_per_length: Mapping[int, int], m: int, seed: int) -> PreferenceProfile:
    """Random instance with a declared number of people per list length.

    People are laid out in increasing order of list length.
    """
    lengths = sorted(k for k, c in n_per_length.items() if c > 0)
    for k in lengths:
        if not 1 <= k <= m:
            raise ValueError(f"list length {k} outside [1, {m}]")
    if any(c < 0 for c in n_per_length.values()):
        raise ValueError("person counts must be non-negative")
    n = sum(n_per_length[k] for k in lengths)
    _check_sizes(n, m)
    rng = _rng(seed)
    blocks = [sample_k_permutations(rng, n_per_length[k], m, k) for k in lengths]
    counts = np.repeat(lengths, [n_per_length[k] for k in lengths])
    offsets = np.concatenate([[0], np.cumsum(counts)])
    items = np.concatenate([b.reshape(-1) for b in blocks])
    return PreferenceProfile(n, m, items, offsets)


def write_profile(profile: PreferenceProfile, fh: TextIO) -> None:
    fh.write(f"{profile.n} {profile.m}\n")
    for lst in profile.lists:
        fh.write(" ".join(map(str, lst)) + "\n")


def _parse_ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError as exc:
        raise ProfileParseError(f"line {lineno}: {exc}") from None


def read_profile(lines: Iterable[str]) -> PreferenceProfile:
    """Parse the text format written by :func:`write_profile`.

    Blank lines and ``#`` comments are skipped.  The result is validated.
    """
    rows = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise ProfileParseError("empty profile")
    header = _parse_ints(rows[0][1], rows[0][0])
    if len(header) != 2:
        raise ProfileParseError(f"line {rows[0][0]}: header must be 'n m'")
    n, m = header
    body = rows[1:]
    if len(body) != n:
        raise ProfileParseError(f"header declares {n} people, found {len(body)} lists")
    profile = PreferenceProfile.from_lists(m, [_parse_ints(line, no) for no, line in body])
    problem = validate(profile)
    if problem is not None:
        raise ProfileParseError(problem)
    return profile
