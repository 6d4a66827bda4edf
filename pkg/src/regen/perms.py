"""Family index permutations and the counting functions built on them.

A family index permutation lists the (signed) family labels of the nodes in
the order they fail.  For position ``i`` the count ``y_i`` is the number of
earlier positions whose node is a helper of the node at ``i``; everything the
min-cut formulas need is a function of the first ``k`` of these counts.

The search over permutations is done on *label-count states* rather than on
permutations: ``y_i`` depends only on how many of each label appeared before
position ``i``.  Complete families other than the last one (and the last one
too when there is no incomplete family) are interchangeable, so their counts
are kept as a sorted tuple.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

from .errors import SearchSpaceTooLarge
from .model import FamilyStructure, ceil_div, family_index_vector

__all__ = [
    "FamilyIndexPermutation",
    "NodeVector",
    "y_vector",
    "z_vector",
    "rfip",
    "y_offset",
    "transcribe",
    "enumerate_y_profiles",
    "min_profile_sum",
    "profile_pairs",
    "modify",
    "scripted_chooser",
    "modify_potential",
    "check_mbr_minimizer",
    "family_counts",
    "DEFAULT_MAX_PROFILES",
]

DEFAULT_MAX_PROFILES = 10**7


def max_profiles() -> int:
    env = os.environ.get("REGEN_MAX_PROFILES")
    return int(env) if env else DEFAULT_MAX_PROFILES


@dataclass(frozen=True)
class FamilyIndexPermutation:
    entries: Tuple[int, ...]
    d: int

    def __post_init__(self):
        expected = Counter(family_index_vector(len(self.entries), self.d))
        if Counter(self.entries) != expected:
            raise ValueError(f"{self.entries} is not a permutation of the family index vector for d={self.d}")

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class NodeVector:
    entries: Tuple[int, ...]
    n: int

    def __post_init__(self):
        if any(not 1 <= r <= self.n for r in self.entries):
            raise ValueError(f"entries of {self.entries} must lie in 1..{self.n}")

    @property
    def distinct(self) -> bool:
        return len(set(self.entries)) == len(self.entries)


def _entries(pi) -> Tuple[int, ...]:
    return tuple(pi.entries) if hasattr(pi, "entries") else tuple(pi)


def y_vector(pi: Union[FamilyIndexPermutation, Sequence[int]]) -> Tuple[int, ...]:
    """Helper counts ``y_1..y_n`` of a family index permutation."""
    e = _entries(pi)
    out = []
    for i, v in enumerate(e):
        if v == 0:
            out.append(sum(1 for u in e[:i] if u > 0))
        else:
            out.append(sum(1 for u in e[:i] if abs(u) != abs(v)))
    return tuple(out)


HelperSets = Union[FamilyStructure, Mapping[int, Iterable[int]], Sequence[Iterable[int]]]


def _helper_lookup(helpers: HelperSets) -> Callable[[int], FrozenSet[int]]:
    if isinstance(helpers, FamilyStructure):
        return helpers.helpers
    if isinstance(helpers, Mapping):
        table = {int(i): frozenset(s) for i, s in helpers.items()}
        return table.__getitem__
    seq = [frozenset(s) for s in helpers]
    return lambda i: seq[i - 1]


def z_vector(r: Union[NodeVector, Sequence[int]], helpers: HelperSets) -> Tuple[int, ...]:
    """``z_i``: distinct earlier entries of ``r`` that are helpers of ``r_i``."""
    e = _entries(r)
    lookup = _helper_lookup(helpers)
    out = []
    for i, node in enumerate(e):
        out.append(len(lookup(node) & set(e[:i])))
    return tuple(out)


def rfip(n: int, d: int) -> Tuple[int, ...]:
    """Rotating family index permutation: fill a table column-wise, read it row-wise."""
    vec = family_index_vector(n, d)
    rows = n - d
    cols = ceil_div(n, rows)
    table = [[None] * cols for _ in range(rows)]
    for pos, v in enumerate(vec):
        table[pos % rows][pos // rows] = v
    return tuple(v for row in table for v in row if v is not None)


def y_offset(pi, k: int) -> int:
    y = y_vector(pi)
    return sum(i - y[i] for i in range(k))


def transcribe(nodes: Sequence[int], fs: FamilyStructure) -> Tuple[int, ...]:
    """Family index sequence of a node ordering."""
    return tuple(fs.family_index[v - 1] for v in nodes)


def family_counts(pi, k: int) -> Dict[int, int]:
    """``l_j``: how many of the first ``k`` entries have absolute value ``j``."""
    return dict(Counter(abs(v) for v in _entries(pi)[:k]))


# -- label-count state space ------------------------------------------------

State = Tuple[Tuple[int, ...], int, int, int]  # (sorted symmetric counts, +c, -c, 0)


class _StateSpace:
    """Transitions between label-count states for one (n, d)."""

    def __init__(self, n: int, d: int):
        self.n, self.d = n, d
        self.size = n - d
        self.c = n // self.size
        self.r = n % self.size
        self.n_sym = self.c if self.r == 0 else self.c - 1

    def start(self) -> State:
        return ((0,) * self.n_sym, 0, 0, 0)

    def moves(self, state: State):
        """Yield ``(y, next_state)`` for every distinct next label class."""
        sym, cp, cn, z = state
        i = sum(sym) + cp + cn + z
        seen = set()
        for idx, u in enumerate(sym):
            if u >= self.size or u in seen:
                continue
            seen.add(u)
            nxt = list(sym)
            nxt[idx] = u + 1
            yield i - u, (tuple(sorted(nxt, reverse=True)), cp, cn, z)
        if self.r:
            if cp < self.r:
                yield i - cp - cn, (sym, cp + 1, cn, z)
            if cn < self.size - self.r:
                yield i - cp - cn, (sym, cp, cn + 1, z)
            if z < self.r:
                yield i - cn - z, (sym, cp, cn, z + 1)


def enumerate_y_profiles(n: int, k: int, d: int, cap: Optional[int] = None) -> Set[Tuple[int, ...]]:
    """All distinct ``(y_1..y_k)`` prefixes reachable by family index permutations."""
    cap = max_profiles() if cap is None else cap
    space = _StateSpace(n, d)

    @lru_cache(maxsize=None)
    def suffixes(state: State, depth: int) -> FrozenSet[Tuple[int, ...]]:
        if depth == k:
            return frozenset({()})
        out = set()
        for y, nxt in space.moves(state):
            for tail in suffixes(nxt, depth + 1):
                out.add((y,) + tail)
            if len(out) > cap:
                raise SearchSpaceTooLarge(f"more than {cap} y-profiles for (n,k,d)=({n},{k},{d})")
        return frozenset(out)

    return set(suffixes(space.start(), 0))


def min_profile_sum(n: int, k: int, d: int, cost: Callable[[int], object]):
    """``min over permutations of sum_{i<=k} cost(y_i)`` by dynamic programming on states."""
    space = _StateSpace(n, d)

    @lru_cache(maxsize=None)
    def best(state: State, depth: int):
        if depth == k:
            return 0
        return min(cost(y) + best(nxt, depth + 1) for y, nxt in space.moves(state))

    return best(space.start(), 0)


def pareto_min(pairs: Iterable[Tuple[int, int]]) -> Tuple[Tuple[int, int], ...]:
    """Pairs not dominated componentwise, sorted by first coordinate."""
    front = []
    best_second = None
    for a, b in sorted(set(pairs)):
        if best_second is None or b < best_second:
            front.append((a, b))
            best_second = b
    return tuple(front)


def profile_pairs(n: int, k: int, d: int, threshold: int) -> Tuple[Tuple[int, int], ...]:
    """Pareto frontier of ``(N, A)`` over permutations at a storage threshold.

    For a permutation with ``c_i = d - y_i``, ``N`` counts the ``i <= k`` with
    ``c_i > threshold`` and ``A`` sums the ``c_i <= threshold``.  Whenever
    ``threshold <= alpha/beta <= threshold + 1`` the min-cut of that permutation
    is ``N*alpha + A*beta``, so the frontier describes the min-cut exactly on
    that cone.
    """
    space = _StateSpace(n, d)

    @lru_cache(maxsize=None)
    def front(state: State, depth: int) -> Tuple[Tuple[int, int], ...]:
        if depth == k:
            return ((0, 0),)
        acc = []
        for y, nxt in space.moves(state):
            c = d - y
            da, db = (1, 0) if c > threshold else (0, c)
            acc.extend((a + da, b + db) for a, b in front(nxt, depth + 1))
        return pareto_min(acc)

    return front(space.start(), 0)


# -- MODIFY -----------------------------------------------------------------

Chooser = Callable[[str, list], object]


def _smallest(kind: str, options: list):
    return min(options)


def scripted_chooser(script: Sequence) -> Chooser:
    """Chooser that replays ``script`` in order, checking every pick is allowed."""
    it = iter(script)

    def choose(kind, options):
        pick = next(it)
        if pick not in options:
            raise ValueError(f"scripted {kind} {pick!r} not among {options!r}")
        return pick

    return choose


def modify_potential(r: Sequence[int], fs: FamilyStructure) -> int:
    """Repeated pairs, complete-family nodes weighted 1 and incomplete ones 2."""
    t = 0
    for node, cnt in Counter(r).items():
        pairs = cnt * (cnt - 1) // 2
        t += pairs if fs.is_complete(node) else 2 * pairs
    return t


def modify(
    r: Union[NodeVector, Sequence[int]],
    fs: FamilyStructure,
    chooser: Optional[Chooser] = None,
    trace: Optional[List[Tuple[int, ...]]] = None,
) -> Tuple[int, ...]:
    """Turn a node vector with repeats into a repeat-free one without lowering any ``z_i``.

    Choice points (which repeated pair, which replacement node) go through
    ``chooser(kind, options)`` with ``kind`` in ``{"pair", "gamma"}``; pairs are
    1-based ``(i, j)``.  The default takes the smallest option.  Every vector
    produced by a mutation is appended to ``trace`` when given.
    """
    choose = chooser or _smallest
    v = list(_entries(r))
    if len(v) > fs.n:
        raise ValueError("a vector longer than n cannot be made repeat-free")
    fam = fs.family_of
    c = fs.c

    def repeats(pred=lambda h: True):
        return [
            (i + 1, j + 1)
            for i in range(len(v))
            for j in range(i + 1, len(v))
            if v[i] == v[j] and pred(v[i])
        ]

    def last_index(pred) -> int:
        return max(idx for idx, node in enumerate(v) if pred(node))

    def record():
        if trace is not None:
            trace.append(tuple(v))

    def swap_to_family_tail(h: int) -> int:
        """Move the last copy of ``h`` to the last slot held by its family; return that slot."""
        q = fam(h)
        j1 = last_index(lambda x: x == h)
        j2 = last_index(lambda x: fam(x) == q)
        v[j1], v[j2] = v[j2], v[j1]
        return j2

    while True:
        # Step 1: swap a repeat for an unused sibling from the same family
        while True:
            present = set(v)
            options = {}
            for i, j in repeats():
                h = v[i - 1]
                sib = sorted(g for g in fs.members(fam(h)) if g != h and g not in present)
                if sib:
                    options[(i, j)] = sib
            if not options:
                break
            i, j = choose("pair", sorted(options))
            v[j - 1] = choose("gamma", options[(i, j)])
            record()

        # Step 2: complete-family repeats take any unused complete-family node
        while True:
            pairs = repeats(fs.is_complete)
            free = sorted(g for g in range(1, fs.n + 1) if fs.is_complete(g) and g not in set(v))
            if not pairs or not free:
                break
            i, _ = choose("pair", pairs)
            j2 = swap_to_family_tail(v[i - 1])
            v[j2] = choose("gamma", free)
            record()

        pairs = repeats()
        if not pairs:
            return tuple(v)
        incomplete = [p for p in pairs if not fs.is_complete(v[p[0] - 1])]
        if len(incomplete) == len(pairs):
            # Step 3: incomplete-family repeat becomes a last-complete-family node
            i, _ = choose("pair", pairs)
            j2 = swap_to_family_tail(v[i - 1])
            v[j2] = choose("gamma", list(fs.members(c)))
            record()
        elif not incomplete:
            # Step 4: complete-family repeat becomes an unused incomplete-family node
            i, _ = choose("pair", pairs)
            j2 = swap_to_family_tail(v[i - 1])
            present = set(v)
            v[j2] = choose("gamma", sorted(g for g in fs.members(0) if g not in present))
            record()
        else:  # pragma: no cover - excluded by exhausting steps 1 and 2
            raise AssertionError(f"mixed repeats after steps 1-2: {v}")


# -- minimizer characterization --------------------------------------------


def check_mbr_minimizer(pi, k: int) -> bool:
    """Whether the first ``k`` labels are spread evenly enough to minimize ``sum (d - y_i)``."""
    e = _entries(pi)
    n = len(e)
    size = sum(1 for v in e if abs(v) == 1)
    c = n // size
    r = n % size
    counts = family_counts(e, k)
    l = {j: counts.get(j, 0) for j in range(0, c + 1)}
    complete = [l[j] for j in range(1, c + 1)]
    if r == 0:
        return max(complete) - min(complete) <= 1
    head = e[:k]
    j1 = max((i + 1 for i, v in enumerate(head) if v == 0), default=0)
    j2 = min((i + 1 for i, v in enumerate(head) if v < 0), default=k + 1)
    if not j1 < j2:
        return False
    capped = l[0] == r and max(complete) - min(complete) <= 1 and min(complete) >= l[0]
    balanced = max(complete + [l[0]]) - min(complete + [l[0]]) <= 1
    return capped or balanced
