"""Which (n, k, d) let helper selection beat blind selection, and what is known to be optimal."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import PreconditionViolation
from .model import GroupPartition, SystemParams, ceil_div, find_optimal_partition
from .rational import Scalar, as_scalar

__all__ = ["Classification", "classify", "mbr_upper_bound_k_nm1", "blind_condition", "achievability_case"]


def blind_condition(p: SystemParams) -> Optional[str]:
    """``"i"`` or ``"ii"`` when blind selection is already optimal, else ``None``."""
    n, k, d = p.as_tuple()
    if k <= ceil_div(n, n - d):
        return "ii"
    if d == 1 and k == 3 and n % 2 == 1:
        return "i"
    return None


def achievability_case(p: SystemParams) -> Optional[str]:
    n, k, d = p.as_tuple()
    if d >= 2 and k > ceil_div(n, n - d):
        return "a"
    if d == 1 and k > 2 and n % 2 == 0:
        return "b"
    if d == 1 and k > 3 and n % 2 == 1:
        return "c"
    return None


@dataclass(frozen=True)
class Classification:
    params: SystemParams
    condition: Optional[str]
    achievability_case: Optional[str]
    fhs_absolutely_optimal: bool
    fhs_mbr_optimal: bool
    family_plus_mbr_optimal: Optional[GroupPartition]
    corollary3_applies: bool

    @property
    def bhs_absolutely_optimal(self) -> bool:
        return self.condition is not None

    @property
    def helper_selection_strictly_helps(self) -> bool:
        return self.condition is None

    @property
    def optimal_scheme(self) -> str:
        """Best scheme known to be absolutely optimal over the whole curve, or ``"unknown"``."""
        if self.bhs_absolutely_optimal:
            return "bhs"
        if self.fhs_absolutely_optimal:
            return "fhs"
        return "unknown"

    def to_json(self) -> dict:
        fp = self.family_plus_mbr_optimal
        return {
            "n": self.params.n,
            "k": self.params.k,
            "d": self.params.d,
            "bhs_optimal": self.bhs_absolutely_optimal,
            "condition": self.condition,
            "helper_selection_helps": self.helper_selection_strictly_helps,
            "case": self.achievability_case or "none",
            "fhs_optimal": self.fhs_absolutely_optimal,
            "fhs_mbr_optimal": self.fhs_mbr_optimal,
            "family_plus_partition": list(fp.parts) if fp else [],
            "corollary3": self.corollary3_applies,
            "optimal_scheme": self.optimal_scheme,
        }


def classify(p: SystemParams) -> Classification:
    n, k, d = p.as_tuple()
    fhs_opt = d % 2 == 0 and n == d + 2 and k == n // 2 + 1
    mbr_opt = k == n - 1 and n % (n - d) == 0
    fp = find_optimal_partition(n, d) if k == n - 1 else None
    return Classification(
        params=p,
        condition=blind_condition(p),
        achievability_case=achievability_case(p),
        fhs_absolutely_optimal=fhs_opt,
        fhs_mbr_optimal=mbr_opt,
        family_plus_mbr_optimal=fp,
        corollary3_applies=(n, k, d) == (4, 3, 2),
    )


def mbr_upper_bound_k_nm1(n: int, beta, d: int, k: Optional[int] = None, alpha=None) -> Scalar:
    """Ceiling ``n*d*beta/2`` on the min-cut of any dynamic scheme when ``k = n-1`` and ``alpha = d*beta``."""
    beta = as_scalar(beta)
    if k is not None and k != n - 1:
        raise PreconditionViolation(f"needs k = n-1, got k={k} for n={n}")
    if alpha is not None and as_scalar(alpha) != d * beta:
        raise PreconditionViolation("needs alpha = d*beta")
    if not 1 <= d <= n - 1:
        raise PreconditionViolation(f"needs 1 <= d <= n-1, got d={d} for n={n}")
    return n * d * beta / 2
