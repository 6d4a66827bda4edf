"""System parameters, the family structure of FHS, and group partitions.

Node indices are 1-based throughout, matching the usual notation for the
family scheme: nodes ``1..n`` are packed into complete families of ``n - d``
consecutive nodes, the leftover ``n mod (n - d)`` nodes form the incomplete
family (family index 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Optional, Tuple

from .errors import ConstraintViolation

__all__ = [
    "SystemParams",
    "FamilyStructure",
    "GroupPartition",
    "validate_params",
    "build_family_structure",
    "build_family_plus_partition",
    "find_optimal_partition",
    "ceil_div",
]


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class SystemParams:
    n: int
    k: int
    d: int

    def __post_init__(self):
        n, k, d = self.n, self.k, self.d
        for name, v in (("n", n), ("k", k), ("d", d)):
            if not isinstance(v, int) or isinstance(v, bool):
                raise ConstraintViolation(f"{name} must be an integer, got {v!r}")
        if n < 2:
            raise ConstraintViolation(f"2 <= n violated (n={n})")
        if not 1 <= k:
            raise ConstraintViolation(f"1 <= k violated (k={k})")
        if not k <= n - 1:
            raise ConstraintViolation(f"k <= n-1 violated (n={n}, k={k})")
        if not 1 <= d:
            raise ConstraintViolation(f"1 <= d violated (d={d})")
        if not d <= n - 1:
            raise ConstraintViolation(f"d <= n-1 violated (n={n}, d={d})")

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.n, self.k, self.d)


def validate_params(n: int, k: int, d: int) -> SystemParams:
    return SystemParams(n, k, d)


def _check_nd(n: int, d: int) -> None:
    if not isinstance(n, int) or not isinstance(d, int) or n < 2 or not 1 <= d <= n - 1:
        raise ConstraintViolation(f"need n >= 2 and 1 <= d <= n-1 (n={n}, d={d})")


@dataclass(frozen=True)
class FamilyStructure:
    """Family index vector and helper sets of the family helper selection scheme."""

    n: int
    d: int
    family_index: Tuple[int, ...]
    helper_sets: Tuple[FrozenSet[int], ...]  # helper_sets[i-1] is D_i

    @property
    def family_size(self) -> int:
        return self.n - self.d

    @property
    def c(self) -> int:
        """Index of the last complete family."""
        return self.n // (self.n - self.d)

    @property
    def incomplete_size(self) -> int:
        return self.n % (self.n - self.d)

    @property
    def num_families(self) -> int:
        return ceil_div(self.n, self.n - self.d)

    def helpers(self, node: int) -> FrozenSet[int]:
        return self.helper_sets[node - 1]

    def family_of(self, node: int) -> int:
        """Physical family of ``node``: 1..c for complete families, 0 for the incomplete one."""
        return abs(self.family_index[node - 1])

    def is_complete(self, node: int) -> bool:
        return self.family_index[node - 1] != 0

    def members(self, family: int) -> Tuple[int, ...]:
        return tuple(i for i in range(1, self.n + 1) if self.family_of(i) == family)

    @cached_property
    def helper_map(self) -> Dict[int, FrozenSet[int]]:
        return {i: self.helper_sets[i - 1] for i in range(1, self.n + 1)}

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "family_index": list(self.family_index),
            "helper_sets": {str(i): sorted(s) for i, s in enumerate(self.helper_sets, start=1)},
        }


def family_index_vector(n: int, d: int) -> Tuple[int, ...]:
    _check_nd(n, d)
    size = n - d
    c = n // size
    r = n % size
    vec = []
    for j in range(1, c):
        vec += [j] * size
    if r:
        vec += [c] * r + [-c] * (size - r) + [0] * r
    else:
        vec += [c] * size
    return tuple(vec)


def build_family_structure(n: int, d: int) -> FamilyStructure:
    fidx = family_index_vector(n, d)
    everyone = range(1, n + 1)
    sets = []
    for i in everyone:
        f = abs(fidx[i - 1])
        if fidx[i - 1] == 0:
            sets.append(frozenset(range(1, d + 1)))
        else:
            sets.append(frozenset(j for j in everyone if abs(fidx[j - 1]) != f))
    return FamilyStructure(n=n, d=d, family_index=fidx, helper_sets=tuple(sets))


@dataclass(frozen=True)
class GroupPartition:
    parts: Tuple[int, ...]
    d: int

    @property
    def n(self) -> int:
        return sum(self.parts)

    def offsets(self) -> Tuple[int, ...]:
        """First node index (1-based) of each group."""
        out, start = [], 1
        for p in self.parts:
            out.append(start)
            start += p
        return tuple(out)

    def to_json(self) -> dict:
        return {"d": self.d, "parts": list(self.parts)}


def build_family_plus_partition(n: int, d: int) -> GroupPartition:
    """Groups of ``2d`` nodes plus at most one remaining group of ``2d+1 .. 4d-1`` nodes.

    With fewer than ``4d`` nodes at most one group fits, so the scheme is plain FHS.
    """
    _check_nd(n, d)
    g = 2 * d
    if n < 2 * g:
        return GroupPartition((n,), d)
    regular, rem = divmod(n, g)
    if rem == 0:
        return GroupPartition((g,) * regular, d)
    return GroupPartition((g,) * (regular - 1) + (g + rem,), d)


def find_optimal_partition(n: int, d: int) -> Optional[GroupPartition]:
    """Split ``n`` into parts ``n_b`` with ``(n_b - d) | d``, fewest parts first.

    Among partitions with the fewest parts the one whose parts, sorted in
    decreasing order, are lexicographically largest is returned.  ``None`` when
    no such split exists.
    """
    _check_nd(n, d)
    sizes = sorted((d + m for m in range(1, d + 1) if d % m == 0 and d + m <= n), reverse=True)
    if not sizes:
        return None
    # fewest parts to reach each total, unbounded coin change
    INF_COUNT = n + 1
    fewest = [0] + [INF_COUNT] * n
    for total in range(1, n + 1):
        for s in sizes:
            if s <= total and fewest[total - s] + 1 < fewest[total]:
                fewest[total] = fewest[total - s] + 1
    if fewest[n] >= INF_COUNT:
        return None
    parts = []
    total = n
    while total:
        for s in sizes:  # largest first keeps the result lexicographically largest
            if s <= total and fewest[total - s] == fewest[total] - 1:
                parts.append(s)
                total -= s
                break
    return GroupPartition(tuple(parts), d)
