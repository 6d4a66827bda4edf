"""Storage/bandwidth tradeoff curves, MBR comparisons and k-sweeps.

The feasible region ``{(alpha, beta) : mincut >= M}`` is convex because the
min-cut is concave and positively homogeneous.  Its boundary is linear between
consecutive slope-change rays ``alpha/beta = rho`` reported by
:meth:`CutEnvelope.breakpoint_ratios`, so the corner points are the boundary
points on those rays at which the polyline actually turns.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .formulas import (
    SCHEMES,
    CutEnvelope,
    OperatingPoint,
    bhs_mbr_point,
    bhs_msr_point,
    family_plus_mbr_point,
    fhs_mbr_point,
    fhs_msr_point,
    scheme_envelope,
)
from .model import SystemParams
from .rational import Scalar, as_scalar, format_scalar

__all__ = [
    "TradeoffCurve",
    "min_alpha_given_beta",
    "min_beta_given_alpha",
    "curve",
    "boundary_points",
    "compare_at_mbr",
    "mbr_point",
    "msr_point",
    "k_sweep_mbr",
    "SweepRow",
    "corners_to_csv",
    "corners_to_json",
    "corners_to_gnuplot",
    "sweep_to_csv",
    "sweep_to_json",
    "CSV_COLUMNS",
]

CSV_COLUMNS = ("k", "scheme", "alpha", "beta", "gamma", "ratio_to_bhs")


def _scheme(scheme: str) -> str:
    s = scheme.lower().replace("_", "-")
    if s in ("familyplus", "fplus"):
        s = "family-plus"
    if s not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {', '.join(SCHEMES)}")
    return s


@dataclass(frozen=True)
class TradeoffCurve:
    scheme: str
    params: SystemParams
    M: Scalar
    corners: Tuple[OperatingPoint, ...]

    @property
    def msr(self) -> OperatingPoint:
        return self.corners[0]

    @property
    def mbr(self) -> OperatingPoint:
        return self.corners[-1]

    def alpha_gamma(self) -> List[Tuple[Fraction, Fraction]]:
        return [(c.alpha, c.gamma) for c in self.corners]


def min_alpha_given_beta(scheme: str, p: SystemParams, beta, M=1) -> Fraction:
    return scheme_envelope(_scheme(scheme), p).min_alpha(beta, M)


def min_beta_given_alpha(scheme: str, p: SystemParams, alpha, M=1) -> Fraction:
    return scheme_envelope(_scheme(scheme), p).min_beta(alpha, M)


def boundary_points(env: CutEnvelope, M) -> List[Tuple[Fraction, Fraction]]:
    """Boundary ``(alpha, beta)`` on every candidate ray, ordered by increasing ``alpha/beta``."""
    M = as_scalar(M)
    out = []
    for rho in env.breakpoint_ratios():
        beta = M / env.mincut(rho, 1)
        out.append((rho * beta, beta))
    return out


def _cross(u, v) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def _corners(points: Sequence[Tuple[Fraction, Fraction]]) -> List[Tuple[Fraction, Fraction]]:
    pts: List[Tuple[Fraction, Fraction]] = []
    for p in points:
        if not pts or pts[-1] != p:
            pts.append(p)
    # the boundary arrives vertically (beta -> inf at alpha_MSR) and leaves horizontally
    vertical, horizontal = (Fraction(0), Fraction(-1)), (Fraction(1), Fraction(0))
    out = []
    for i, p in enumerate(pts):
        din = (p[0] - pts[i - 1][0], p[1] - pts[i - 1][1]) if i else vertical
        dout = (pts[i + 1][0] - p[0], pts[i + 1][1] - p[1]) if i + 1 < len(pts) else horizontal
        if _cross(din, dout) != 0:
            out.append(p)
    return out


def curve(scheme: str, p: SystemParams, M=1) -> TradeoffCurve:
    scheme = _scheme(scheme)
    M = as_scalar(M)
    env = scheme_envelope(scheme, p)
    corners = tuple(OperatingPoint.of(a, b, p.d, M) for a, b in _corners(boundary_points(env, M)))
    return TradeoffCurve(scheme, p, M, corners)


# -- comparisons -------------------------------------------------------------


def mbr_point(scheme: str, p: SystemParams, M=1) -> OperatingPoint:
    scheme = _scheme(scheme)
    if scheme == "bhs":
        return bhs_mbr_point(p, M)
    if scheme == "fhs":
        return fhs_mbr_point(p, M)
    return family_plus_mbr_point(p.n, p.k, p.d, M)


def msr_point(scheme: str, p: SystemParams, M=1) -> OperatingPoint:
    scheme = _scheme(scheme)
    if scheme == "bhs":
        return bhs_msr_point(p, M)
    if scheme == "fhs":
        return fhs_msr_point(p, M)
    M = as_scalar(M)
    env = scheme_envelope(scheme, p)
    alpha = M / env.msr_count()
    return OperatingPoint.of(alpha, env.min_beta(alpha, M), p.d, M)


def compare_at_mbr(p: SystemParams, M=1) -> dict:
    """MBR points of all three schemes and the pairwise bandwidth ratios."""
    M = as_scalar(M)
    pts = {s: mbr_point(s, p, M) for s in SCHEMES}
    g = {s: pts[s].gamma for s in SCHEMES}
    return {
        "params": {"n": p.n, "k": p.k, "d": p.d},
        "points": pts,
        "ratios": {
            "fhs/bhs": g["fhs"] / g["bhs"],
            "family-plus/bhs": g["family-plus"] / g["bhs"],
            "family-plus/fhs": g["family-plus"] / g["fhs"],
        },
    }


@dataclass(frozen=True)
class SweepRow:
    k: int
    points: dict  # scheme -> OperatingPoint
    bhs_saturated: bool

    def gamma(self, scheme: str) -> Fraction:
        return self.points[_scheme(scheme)].gamma

    def ratio_to_bhs(self, scheme: str) -> Fraction:
        return self.gamma(scheme) / self.gamma("bhs")


def k_sweep_mbr(n: int, d: int, M=1, k_range: Optional[Iterable[int]] = None) -> List[SweepRow]:
    """MBR bandwidth of every scheme for each ``k``; BHS is flagged saturated once ``k > d``."""
    M = as_scalar(M)
    ks = range(1, n) if k_range is None else k_range
    rows = []
    for k in ks:
        p = SystemParams(n, k, d)
        rows.append(SweepRow(k, {s: mbr_point(s, p, M) for s in SCHEMES}, bhs_saturated=k > d))
    return rows


# -- serialization -----------------------------------------------------------


def _write_csv(rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _point_row(k, scheme, pt: OperatingPoint, ratio) -> list:
    return [
        k,
        scheme,
        format_scalar(pt.alpha),
        format_scalar(pt.beta),
        format_scalar(pt.gamma),
        "" if ratio is None else format_scalar(ratio),
    ]


def corners_to_csv(c: TradeoffCurve) -> str:
    return _write_csv(_point_row(c.params.k, c.scheme, pt, None) for pt in c.corners)


def corners_to_json(c: TradeoffCurve) -> str:
    doc = {
        "scheme": c.scheme,
        "n": c.params.n,
        "k": c.params.k,
        "d": c.params.d,
        "M": format_scalar(c.M),
        "corners": [pt.to_json() for pt in c.corners],
    }
    return json.dumps(doc, indent=2)


def corners_to_gnuplot(c: TradeoffCurve, exact: bool = False) -> str:
    """Two whitespace-separated columns, alpha and gamma; decimals unless ``exact``."""
    lines = ["# alpha gamma"]
    for pt in c.corners:
        if exact:
            lines.append(f"{format_scalar(pt.alpha)} {format_scalar(pt.gamma)}")
        else:
            lines.append(f"{float(pt.alpha):.12g} {float(pt.gamma):.12g}")
    return "\n".join(lines) + "\n"


def sweep_to_csv(rows: Sequence[SweepRow]) -> str:
    out = []
    for r in rows:
        for s in SCHEMES:
            out.append(_point_row(r.k, s, r.points[s], r.ratio_to_bhs(s)))
    return _write_csv(out)


def sweep_to_json(rows: Sequence[SweepRow]) -> str:
    doc = []
    for r in rows:
        for s in SCHEMES:
            entry = {"k": r.k, "scheme": s}
            entry.update({key: format_scalar(getattr(r.points[s], key)) for key in ("alpha", "beta", "gamma")})
            entry["ratio_to_bhs"] = format_scalar(r.ratio_to_bhs(s))
            if s == "bhs":
                entry["saturated"] = r.bhs_saturated
            doc.append(entry)
    return json.dumps(doc, indent=2)
