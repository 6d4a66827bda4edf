"""Closed-form and exact-search min-cut evaluators.

Every scheme's min-cut has the shape ``min over profiles of sum_i min(c_i*beta, alpha)``
with integer coefficients ``0 <= c_i <= d``.  On the cone
``t <= alpha/beta <= t+1`` (integer ``t``) each profile is the linear function
``N*alpha + A*beta`` where ``N = #{c_i > t}`` and ``A = sum_{c_i <= t} c_i``, so
the scheme is described exactly by a small Pareto set of ``(N, A)`` pairs per
cone.  :class:`CutEnvelope` holds those sets; the operating-point solvers and
the tradeoff module work on it directly.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor
from typing import Callable, Dict, Optional, Sequence, Tuple

from .errors import InfeasibleBeta, PreconditionViolation, SearchSpaceTooLarge
from .model import (
    FamilyStructure,
    GroupPartition,
    SystemParams,
    build_family_plus_partition,
    ceil_div,
)
from .perms import pareto_min, profile_pairs, rfip, y_vector
from .rational import INF, Scalar, as_scalar, is_inf

__all__ = [
    "OperatingPoint",
    "CutEnvelope",
    "bhs_envelope",
    "fhs_envelope",
    "family_plus_envelope",
    "scheme_envelope",
    "bhs_mincut",
    "fhs_mincut",
    "shs_lower_bound",
    "fhs_mbr_point",
    "fhs_msr_point",
    "bhs_mbr_point",
    "bhs_msr_point",
    "family_plus_mincut",
    "family_plus_allocation_mincut",
    "family_plus_mbr_point",
    "family_plus_mbr_sum",
    "rfip_mbr_sum",
    "corollary_low_b",
    "prop13_mbr_value",
    "SCHEMES",
]

SCHEMES = ("bhs", "fhs", "family-plus")

Pairs = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class OperatingPoint:
    alpha: Scalar
    beta: Scalar
    gamma: Scalar
    M: Scalar

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "M"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    @classmethod
    def of(cls, alpha, beta, d: int, M) -> "OperatingPoint":
        beta = as_scalar(beta)
        return cls(as_scalar(alpha), beta, d * beta, as_scalar(M))

    def to_json(self) -> dict:
        from .rational import format_scalar

        return {k: format_scalar(getattr(self, k)) for k in ("alpha", "beta", "gamma", "M")}


def _pairs_of_profile(coeffs: Sequence[int], t: int) -> Tuple[int, int]:
    return (sum(1 for c in coeffs if c > t), sum(c for c in coeffs if c <= t))


class CutEnvelope:
    """Exact min-cut of one scheme as a function of ``(alpha, beta)``.

    ``pairs(t)`` returns the Pareto-minimal ``(N, A)`` pairs valid on the cone
    ``t <= alpha/beta <= t+1`` for ``t = 0..d``; the last cone extends to
    infinity because no coefficient exceeds ``d``.
    """

    def __init__(self, d: int, pairs_fn: Callable[[int], Pairs], label: str = ""):
        self.d = d
        self._fn = pairs_fn
        self._cache: Dict[int, Pairs] = {}
        self.label = label

    def pairs(self, t: int) -> Pairs:
        t = max(0, min(t, self.d))
        if t not in self._cache:
            self._cache[t] = self._fn(t)
        return self._cache[t]

    def cone(self, alpha: Scalar, beta: Scalar) -> int:
        if is_inf(alpha):
            return self.d
        if is_inf(beta):
            return 0
        return min(self.d, floor(alpha / beta))

    def mincut(self, alpha, beta) -> Scalar:
        alpha, beta = as_scalar(alpha), as_scalar(beta)
        if alpha < 0 or beta < 0:
            raise ValueError("alpha and beta must be nonnegative")
        if beta == 0 or alpha == 0:
            return Fraction(0)
        t = self.cone(alpha, beta)
        return min(n * alpha + a * beta for n, a in self.pairs(t))

    # -- solvers ----------------------------------------------------------

    def mbr_sum(self) -> int:
        """Smallest ``sum c_i`` over profiles, the coefficient of beta when alpha >= d*beta."""
        ((_, a),) = self.pairs(self.d)
        return a

    def msr_count(self) -> int:
        """Smallest number of nonzero coefficients, the coefficient of alpha when beta is unbounded."""
        return min(n for n, _ in self.pairs(0))

    def min_alpha(self, beta, M) -> Fraction:
        """Least ``alpha`` with ``mincut(alpha, beta) >= M``."""
        beta, M = as_scalar(beta), as_scalar(M)
        if M <= 0:
            return Fraction(0)
        if is_inf(beta):
            return M / self.msr_count()
        if beta <= 0 or self.mbr_sum() * beta < M:
            raise InfeasibleBeta(f"beta={beta} cannot reach M={M}: need beta >= {M / self.mbr_sum()}")
        for t in range(self.d):
            lo, hi = t * beta, (t + 1) * beta
            if self.mincut(hi, beta) < M:
                continue
            need = lo
            for n, a in self.pairs(t):
                if n:
                    need = max(need, (M - a * beta) / n)
            return need
        return self.d * beta  # pragma: no cover - the last cone always succeeds when feasible

    def min_beta(self, alpha, M) -> Fraction:
        """Least ``beta`` with ``mincut(alpha, beta) >= M``."""
        alpha, M = as_scalar(alpha), as_scalar(M)
        if M <= 0:
            return Fraction(0)
        if is_inf(alpha):
            return M / self.mbr_sum()
        if alpha <= 0 or self.msr_count() * alpha < M:
            raise InfeasibleBeta(f"alpha={alpha} cannot reach M={M}")
        for t in range(self.d, -1, -1):
            lo = alpha / (t + 1) if t < self.d else Fraction(0)
            hi = alpha / t if t else INF
            if hi is not INF and self.mincut(alpha, hi) < M:
                continue
            need = lo
            for n, a in self.pairs(t):
                if a:
                    need = max(need, (M - n * alpha) / a)
            return need
        raise AssertionError("unreachable")  # pragma: no cover

    def breakpoint_ratios(self) -> Tuple[Fraction, ...]:
        """Every ``alpha/beta`` in ``[1, d]`` where the envelope can change slope."""
        ratios = {Fraction(t) for t in range(1, self.d + 1)}
        for t in range(1, self.d):
            ps = self.pairs(t)
            for (n1, a1), (n2, a2) in itertools.combinations(ps, 2):
                if n1 != n2:
                    rho = Fraction(a2 - a1, n1 - n2)
                    if t < rho < t + 1:
                        ratios.add(rho)
        return tuple(sorted(ratios))


# -- scheme envelopes --------------------------------------------------------


def bhs_coefficients(k: int, d: int) -> Tuple[int, ...]:
    return tuple(max(d - i, 0) for i in range(k))


def bhs_envelope(n: int, k: int, d: int) -> CutEnvelope:
    coeffs = bhs_coefficients(k, d)
    return CutEnvelope(d, lambda t: (_pairs_of_profile(coeffs, t),), label="bhs")


@lru_cache(maxsize=4096)
def _fhs_pairs(n: int, k: int, d: int, t: int) -> Pairs:
    if k == 0:
        return ((0, 0),)
    return profile_pairs(n, k, d, t)


def fhs_envelope(n: int, k: int, d: int) -> CutEnvelope:
    """FHS on ``n`` nodes with ``0 <= k <= n`` collector nodes (``k = n`` is allowed for groups)."""
    return CutEnvelope(d, lambda t: _fhs_pairs(n, k, d, t), label="fhs")


def _minkowski(p: Pairs, q: Pairs) -> Pairs:
    return pareto_min((a + c, b + e) for a, b in p for c, e in q)


def _family_plus_pairs(parts: Tuple[int, ...], k: int, d: int, t: int) -> Pairs:
    # min-plus over groups; table[j] is the frontier for j collector nodes so far
    table: Dict[int, Pairs] = {0: ((0, 0),)}
    for nb in parts:
        nxt: Dict[int, list] = {}
        for used, front in table.items():
            for kb in range(0, min(nb, k - used) + 1):
                nxt.setdefault(used + kb, []).extend(_minkowski(front, _fhs_pairs(nb, kb, d, t)))
        table = {j: pareto_min(v) for j, v in nxt.items()}
    if k not in table:
        raise ValueError(f"groups {parts} hold fewer than k={k} nodes")
    return table[k]


def family_plus_envelope(parts: GroupPartition, k: int) -> CutEnvelope:
    return CutEnvelope(parts.d, lambda t: _family_plus_pairs(parts.parts, k, parts.d, t), label="family-plus")


def scheme_envelope(scheme: str, p: SystemParams) -> CutEnvelope:
    n, k, d = p.as_tuple()
    if scheme == "bhs":
        return bhs_envelope(n, k, d)
    if scheme == "fhs":
        return fhs_envelope(n, k, d)
    if scheme == "family-plus":
        return family_plus_envelope(build_family_plus_partition(n, d), k)
    raise ValueError(f"unknown scheme {scheme!r}; expected one of {', '.join(SCHEMES)}")


# -- min-cut evaluators ------------------------------------------------------


def bhs_mincut(p: SystemParams, alpha, beta) -> Scalar:
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    total = Fraction(0)
    for c in bhs_coefficients(p.k, p.d):
        total += min(c * beta, alpha)
    return total


def fhs_mincut(p: SystemParams, alpha, beta) -> Scalar:
    return fhs_envelope(p.n, p.k, p.d).mincut(alpha, beta)


def _shs_cap() -> int:
    env = os.environ.get("REGEN_MAX_PROFILES")
    return int(env) if env else 10**7


def shs_lower_bound(helpers, k: int, alpha, beta, cap: Optional[int] = None) -> Scalar:
    """``min over r in {1..n}^k`` of ``sum min((d - z_i(r))*beta, alpha)`` for fixed helper sets.

    Only the set of distinct nodes seen so far matters for the next ``z``, so
    the search is memoized on that set.
    """
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    if isinstance(helpers, FamilyStructure):
        sets = list(helpers.helper_sets)
    elif isinstance(helpers, dict):
        sets = [frozenset(helpers[i]) for i in sorted(helpers)]
    else:
        sets = [frozenset(s) for s in helpers]
    n = len(sets)
    sizes = {len(s) for s in sets}
    if len(sizes) != 1:
        raise ValueError("all helper sets must have the same size d")
    (d,) = sizes
    cap = _shs_cap() if cap is None else cap
    if n**k > cap:
        raise SearchSpaceTooLarge(f"{n}^{k} node vectors exceed the cap {cap}")

    @lru_cache(maxsize=None)
    def best(seen: frozenset, depth: int) -> Scalar:
        if depth == k:
            return Fraction(0)
        out = None
        for node in range(1, n + 1):
            z = len(sets[node - 1] & seen)
            v = min((d - z) * beta, alpha) + best(seen | {node}, depth + 1)
            if out is None or v < out:
                out = v
        return out

    return best(frozenset(), 0)


# -- operating points --------------------------------------------------------


def rfip_mbr_sum(n: int, k: int, d: int) -> int:
    y = y_vector(rfip(n, d))
    return sum(d - y[i] for i in range(k))


def fhs_mbr_point(p: SystemParams, M=1) -> OperatingPoint:
    M = as_scalar(M)
    beta = M / rfip_mbr_sum(p.n, p.k, p.d)
    return OperatingPoint.of(p.d * beta, beta, p.d, M)


def bhs_mbr_point(p: SystemParams, M=1) -> OperatingPoint:
    M = as_scalar(M)
    beta = M / sum(bhs_coefficients(p.k, p.d))
    return OperatingPoint.of(p.d * beta, beta, p.d, M)


def bhs_msr_point(p: SystemParams, M=1) -> OperatingPoint:
    M = as_scalar(M)
    m = min(p.d, p.k)
    alpha = M / m
    return OperatingPoint.of(alpha, alpha / (p.d - m + 1), p.d, M)


def fhs_msr_point(p: SystemParams, M=1) -> OperatingPoint:
    """MSR point of FHS; closed form when ``d >= k``, exact envelope search otherwise."""
    M = as_scalar(M)
    n, k, d = p.as_tuple()
    alpha = M / min(d, k)
    if d >= k:
        beta = M / (k * (d - k + 1))
    else:
        beta = fhs_envelope(n, k, d).min_beta(alpha, M)
    return OperatingPoint.of(alpha, beta, d, M)


def family_plus_mincut(parts: GroupPartition, k: int, alpha, beta) -> Scalar:
    if k > parts.n:
        raise ValueError(f"k={k} exceeds the {parts.n} nodes in the partition")
    return family_plus_envelope(parts, k).mincut(alpha, beta)


def family_plus_allocation_mincut(parts: GroupPartition, k: int, alpha, beta) -> Scalar:
    """Direct minimization over every allocation ``k = sum k_b``; slow reference for small B."""
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    best = None
    for alloc in itertools.product(*(range(nb + 1) for nb in parts.parts)):
        if sum(alloc) != k:
            continue
        v = sum(
            (fhs_envelope(nb, kb, parts.d).mincut(alpha, beta) for nb, kb in zip(parts.parts, alloc)),
            Fraction(0),
        )
        if best is None or v < best:
            best = v
    return best


def family_plus_mbr_sum(n: int, k: int, d: int) -> int:
    """Coefficient of beta in the family-plus MBR equation, canonical partition."""
    g = 2 * d
    if n < 2 * g:
        return rfip_mbr_sum(n, k, d)
    rem = n % g
    if rem:
        n_l = g + rem
        head = sum(d - i + i // 2 for i in range(min(k, g - 1)))
    else:
        n_l = 0
        head = 0
    extra = max(k - n_l, 0)
    q = extra % g - 1
    return head + d * d * (extra // g) + sum(d - i + i // 2 for i in range(q + 1))


def family_plus_mbr_point(n: int, k: int, d: int, M=1) -> OperatingPoint:
    SystemParams(n, k, d)
    M = as_scalar(M)
    beta = M / family_plus_mbr_sum(n, k, d)
    return OperatingPoint.of(d * beta, beta, d, M)


# -- special shapes ----------------------------------------------------------


def corollary_low_b(p: SystemParams, alpha, beta) -> Scalar:
    n, k, d = p.as_tuple()
    if d < 2 or k != ceil_div(n, n - d) + 1:
        raise PreconditionViolation(
            f"needs d >= 2 and k = ceil(n/(n-d)) + 1 = {ceil_div(n, n - d) + 1}; got (n,k,d)=({n},{k},{d})"
        )
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    total = 2 * min(d * beta, alpha)
    for i in range(2, k):
        total += min((d - i) * beta, alpha)
    return total


def prop13_mbr_value(n: int, alpha, k: Optional[int] = None, d: Optional[int] = None, beta=None) -> Scalar:
    """``n*alpha/2``; pass ``k``, ``d`` (and ``beta``) to have the shape checked."""
    alpha = as_scalar(alpha)
    if k is not None and k != n - 1:
        raise PreconditionViolation(f"needs k = n-1, got k={k} for n={n}")
    if d is not None and n % (n - d) != 0:
        raise PreconditionViolation(f"needs n mod (n-d) = 0, got n={n}, d={d}")
    if d is not None and beta is not None and alpha != d * as_scalar(beta):
        raise PreconditionViolation("needs alpha = d*beta")
    return n * alpha / 2
