"""Command-line front end.

Exit status: 0 success, 2 usage or parameter error, 3 infeasible request,
4 search cap exceeded, 5 oracle and formula disagree.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from typing import List, Optional, Sequence, Tuple

from .classify import classify
from .errors import (
    ConstraintViolation,
    InfeasibleBeta,
    InvalidHelperSet,
    PreconditionViolation,
    SearchSpaceTooLarge,
)
from .formulas import SCHEMES, OperatingPoint, fhs_mincut
from .ifg import family_plus_policy, fhs_policy, oracle_fhs_mincut, random_policy, simulate
from .model import SystemParams, build_family_plus_partition, find_optimal_partition
from .rational import format_scalar, parse_scalar
from .tradeoff import (
    corners_to_csv,
    corners_to_gnuplot,
    corners_to_json,
    curve,
    k_sweep_mbr,
    mbr_point,
    min_alpha_given_beta,
    min_beta_given_alpha,
    msr_point,
    sweep_to_csv,
    sweep_to_json,
)

EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_CAP = 4
EXIT_MISMATCH = 5

POLICIES = ("fhs", "family-plus", "random")


def _rational(text: str):
    try:
        return parse_scalar(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def _add_nkd(sp):
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("d", type=int)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "plain"), default="plain")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--file-size", "-M", type=_rational, default=parse_scalar("1"), help="file size as p/q")
    common.add_argument("--max-profiles", type=_positive, help="cap on enumerated permutation profiles")

    ap = argparse.ArgumentParser(prog="regen", description="Exact storage/bandwidth tradeoffs under helper selection.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classify", parents=[common], help="is blind selection already optimal?")
    _add_nkd(sp)

    sp = sub.add_parser("curve", parents=[common], help="corner points of a tradeoff curve")
    sp.add_argument("scheme", choices=SCHEMES)
    _add_nkd(sp)
    sp.add_argument("--gnuplot", action="store_true", help="two columns: alpha gamma")
    at = sp.add_mutually_exclusive_group()
    at.add_argument("--at-beta", type=_rational, help="report only the boundary point with this beta")
    at.add_argument("--at-alpha", type=_rational, help="report only the boundary point with this alpha")

    for name in ("mbr", "msr"):
        sp = sub.add_parser(name, parents=[common], help=f"{name.upper()} operating point")
        sp.add_argument("scheme", choices=SCHEMES)
        _add_nkd(sp)

    sp = sub.add_parser("verify", parents=[common], help="brute-force oracle against the FHS formula")
    _add_nkd(sp)
    sp.add_argument("--alpha", type=_rational)
    sp.add_argument("--beta", type=_rational, default=parse_scalar("1"))
    sp.add_argument("--extra-rounds", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("simulate", parents=[common], help="run failures under a helper policy")
    sp.add_argument("policy", choices=POLICIES)
    _add_nkd(sp)
    sp.add_argument("--failures", required=True, help="comma list of nodes, or random:SEED[:COUNT]")
    sp.add_argument("--alpha", type=_rational)
    sp.add_argument("--beta", type=_rational, default=parse_scalar("1"))
    sp.add_argument("--seed", type=int, default=0, help="seed of the random helper policy")

    sp = sub.add_parser("partition", parents=[common], help="group partitions for family-plus")
    sp.add_argument("n", type=int)
    sp.add_argument("d", type=int)

    sp = sub.add_parser("sweep", parents=[common], help="MBR bandwidth of every scheme across k")
    sp.add_argument("n", type=int)
    sp.add_argument("d", type=int)
    sp.add_argument("--k-max", type=int)
    sp.add_argument("--k-min", type=int, default=1)
    return ap


def _failures(spec: str, n: int) -> List[int]:
    if spec.startswith("random:"):
        parts = spec.split(":")
        seed = int(parts[1])
        count = int(parts[2]) if len(parts) > 2 else 2 * n
        rng = random.Random(seed)
        return [rng.randint(1, n) for _ in range(count)]
    try:
        out = [int(x) for x in spec.split(",") if x.strip()]
    except ValueError:
        raise ConstraintViolation(f"cannot parse failure list {spec!r}")
    bad = [v for v in out if not 1 <= v <= n]
    if bad:
        raise ConstraintViolation(f"failed nodes {bad} outside 1..{n}")
    return out


def _plain(doc) -> str:
    if isinstance(doc, dict):
        return "".join(f"{k}: {_plain_value(v)}\n" for k, v in doc.items())
    return str(doc)


def _plain_value(v) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(_plain_value(x) for x in v) or "-"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_plain_value(x)}" for k, x in v.items())
    if v is None:
        return "-"
    return str(v).lower() if isinstance(v, bool) else str(v)


def _emit(doc, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        rows = doc if isinstance(doc, list) else [doc]
        keys = list(rows[0])
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _plain_value(v) for k, v in r.items()})
        return buf.getvalue()
    if isinstance(doc, list):
        return "".join(_plain(x) + "\n" for x in doc)
    return _plain(doc)


def _point_doc(scheme, p, pt) -> dict:
    doc = {"scheme": scheme, "n": p.n, "k": p.k, "d": p.d}
    doc.update(pt.to_json())
    return doc


def _run(args) -> Tuple[int, str]:
    cmd = args.command
    M = args.file_size
    if cmd == "classify":
        doc = classify(SystemParams(args.n, args.k, args.d)).to_json()
        return 0, _emit(doc, args.format)

    if cmd == "curve":
        p = SystemParams(args.n, args.k, args.d)
        if args.at_beta is not None or args.at_alpha is not None:
            if args.at_beta is not None:
                beta = args.at_beta
                alpha = min_alpha_given_beta(args.scheme, p, beta, M)
            else:
                alpha = args.at_alpha
                beta = min_beta_given_alpha(args.scheme, p, alpha, M)
            pt = OperatingPoint.of(alpha, beta, p.d, M)
            return 0, _emit(_point_doc(args.scheme, p, pt), args.format)
        c = curve(args.scheme, p, M)
        if args.gnuplot:
            return 0, corners_to_gnuplot(c)
        if args.format == "json":
            return 0, corners_to_json(c) + "\n"
        if args.format == "csv":
            return 0, corners_to_csv(c)
        lines = [f"{args.scheme} (n,k,d)=({p.n},{p.k},{p.d}) M={format_scalar(M)}"]
        lines += [f"alpha={format_scalar(pt.alpha)} gamma={format_scalar(pt.gamma)} beta={format_scalar(pt.beta)}" for pt in c.corners]
        return 0, "\n".join(lines) + "\n"

    if cmd in ("mbr", "msr"):
        p = SystemParams(args.n, args.k, args.d)
        pt = (mbr_point if cmd == "mbr" else msr_point)(args.scheme, p, M)
        return 0, _emit(_point_doc(args.scheme, p, pt), args.format)

    if cmd == "verify":
        p = SystemParams(args.n, args.k, args.d)
        alpha = args.alpha if args.alpha is not None else p.d * args.beta
        formula = fhs_mincut(p, alpha, args.beta)
        oracle = oracle_fhs_mincut(p, alpha, args.beta, extra_rounds=args.extra_rounds, seed=args.seed)
        doc = {
            "n": p.n,
            "k": p.k,
            "d": p.d,
            "alpha": format_scalar(alpha),
            "beta": format_scalar(args.beta),
            "formula": format_scalar(formula),
            "oracle": format_scalar(oracle),
            "match": formula == oracle,
        }
        return (0 if formula == oracle else EXIT_MISMATCH), _emit(doc, args.format)

    if cmd == "simulate":
        p = SystemParams(args.n, args.k, args.d)
        if args.policy == "fhs":
            pol = fhs_policy(p.n, p.d)
        elif args.policy == "family-plus":
            pol = family_plus_policy(p.n, p.d)
        else:
            pol = random_policy(p.n, p.d, args.seed)
        alpha = args.alpha if args.alpha is not None else p.d * args.beta
        report = simulate(pol, p, _failures(args.failures, p.n), alpha, args.beta)
        doc = {"policy": args.policy, "k": p.k, **report.to_json()}
        if args.format == "plain":
            lines = [f"{s['failed']} <- {' '.join(map(str, s['helpers']))}" for s in doc["steps"]]
            lines.append(f"mincut {doc['mincut']} at collector {' '.join(map(str, doc['collector']))}")
            return 0, "\n".join(lines) + "\n"
        return 0, _emit(doc, args.format)

    if cmd == "partition":
        canonical = build_family_plus_partition(args.n, args.d)
        best = find_optimal_partition(args.n, args.d)
        doc = {
            "n": args.n,
            "d": args.d,
            "family_plus": list(canonical.parts),
            "divisible": list(best.parts) if best else None,
        }
        return 0, _emit(doc, args.format)

    if cmd == "sweep":
        k_max = args.k_max if args.k_max is not None else args.n - 1
        rows = k_sweep_mbr(args.n, args.d, M, range(args.k_min, k_max + 1))
        if args.format == "json":
            return 0, sweep_to_json(rows) + "\n"
        if args.format == "csv":
            return 0, sweep_to_csv(rows)
        lines = ["k gamma_bhs gamma_fhs gamma_family_plus"]
        for r in rows:
            g = [format_scalar(r.gamma(s)) for s in SCHEMES]
            flag = "  (bhs saturated)" if r.bhs_saturated else ""
            lines.append(f"{r.k} {' '.join(g)}{flag}")
        return 0, "\n".join(lines) + "\n"

    raise AssertionError(cmd)  # pragma: no cover


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    if args.max_profiles:
        os.environ["REGEN_MAX_PROFILES"] = str(args.max_profiles)
    try:
        status, text = _run(args)
    except (ConstraintViolation, PreconditionViolation, InvalidHelperSet, ValueError) as exc:
        if isinstance(exc, InfeasibleBeta):
            print(f"infeasible: {exc}", file=stderr)
            return EXIT_INFEASIBLE
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except SearchSpaceTooLarge as exc:
        print(f"search cap exceeded: {exc}", file=stderr)
        return EXIT_CAP
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
