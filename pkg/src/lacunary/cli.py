"""Command-line front end.

Exit status: 0 when every check passes, 1 when a check fails, 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import bounds
from .decompose import all_decompositions, decompose_at_degree
from .harness import TrialConfig, run_trials, verify_all
from .series import pow_frac
from .sparse_poly import PolyParseError, normalize_f, parse_poly
from .towers import pow2_exponent

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _bounds(args) -> int:
    l = args.l
    if l < 1:
        raise _UsageError("--l must be >= 1")
    b1 = bounds.B1(l)
    report = {
        "l": l,
        "b1": bounds.B1_text(l),
        "b1_tower": b1.render(),
        "b1_log2": bounds.B1_log2_text(l),
        "d_max": bounds.d_max(l),
    }
    if l >= 2:
        M = bounds.M_of(l)
        twoL = bounds.twoL_bound(l)
        report["M"] = M.render()
        report["M_log2"] = pow2_exponent(M)
        report["two_L"] = twoL.render()
        report["two_L_log2"] = pow2_exponent(twoL)
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        for key, value in report.items():
            if value is not None:
                print(f"{key}: {value}")
    return EXIT_OK


def _verify_chains(args) -> int:
    if args.l_max < 2:
        raise _UsageError("--l-max must be >= 2")
    summary = verify_all(args.l_max)
    print(summary.report())
    return EXIT_OK if summary.ok else EXIT_FAIL


def _verify_l2(args) -> int:
    rep = bounds.l2_pipeline()
    if args.json:
        print(json.dumps(rep.as_dict(), indent=2))
    else:
        for d, counts in rep.shape_counts.items():
            print(f"d = {d}: {counts['strict']} shapes (strict cap), {counts['nonstrict']} (nonstrict cap)")
        print(f"L used: {rep.L_used}")
        print(f"n_2/n_1 <= {rep.ratio_bound}")
        print(f"h_1 <= {rep.h1_max}")
        print(f"case 1 terms <= {rep.case1_terms}")
        print(f"(s - kd)/e in [{rep.case2_exp_min}, {rep.case2_exp_max}]")
        print(f"denominator terms <= {rep.denom_terms}")
        print(f"final bound: {rep.final_bound}")
        for name, ok in rep.checks:
            print(f"[{'ok' if ok else 'FAIL'}] {name}")
    return EXIT_OK if rep.ok else EXIT_FAIL


def _decompose(args) -> int:
    f = parse_poly(args.poly)
    if f.is_constant():
        raise _UsageError("polynomial must be non-constant")
    if args.degree is not None:
        if args.degree < 1:
            raise _UsageError("--degree must be >= 1")
        dec = decompose_at_degree(f, args.degree)
        if dec is None:
            print(f"no decomposition with deg g = {args.degree}")
            return EXIT_FAIL
        decs = [dec]
    else:
        decs = all_decompositions(f)
        if not decs:
            print("indecomposable")
            return EXIT_OK
    for dec in decs:
        print(f"g = {dec.g.to_text()}")
        print(f"h = {dec.h.to_text()}")
    return EXIT_OK


def _expand(args) -> int:
    f = parse_poly(args.f)
    if f.is_constant():
        raise _UsageError("polynomial must be non-constant")
    if args.d < 1 or args.order < 0:
        raise _UsageError("--d must be >= 1 and --order >= 0")
    tail = normalize_f(f).tail()
    print(pow_frac(tail, 1, args.d, args.order).to_text("y"))
    return EXIT_OK


def _fuzz(args) -> int:
    try:
        cfg = TrialConfig(
            master_seed=args.seed,
            trials=args.trials,
            max_deg_g=args.max_deg_g,
            max_deg_h=args.max_deg_h,
            max_terms_h=args.max_terms_h,
            coeff_bound=args.coeff_bound,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    out = open(args.out, "w") if args.out else None
    total = bad = 0
    try:
        for rec in run_trials(cfg, workers=args.workers):
            total += 1
            line = rec.to_json()
            if out is not None:
                out.write(line + "\n")
            else:
                print(line)
            if rec.error or not (
                rec.decomposition_recovered and rec.structural_match
                and rec.deg_bound_ok and rec.b1_satisfied
            ):
                bad += 1
    finally:
        if out is not None:
            out.close()
    print(f"{total} trials, {bad} with a failed check", file=sys.stderr if out is None else sys.stdout)
    return EXIT_OK if bad == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lacunary", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="B1(l), M and the 2L bound for one l")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_bounds)

    p = sub.add_parser("verify-chains", help="check every inequality chain for l = 2..l_max")
    p.add_argument("--l-max", type=int, required=True)
    p.set_defaults(func=_verify_chains)

    p = sub.add_parser("verify-l2", help="recompute the constants of the l = 2 bound")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_verify_l2)

    p = sub.add_parser("decompose", help="decompose f = g(h) over Q")
    p.add_argument("--poly", required=True)
    p.add_argument("--degree", type=int)
    p.set_defaults(func=_decompose)

    p = sub.add_parser("expand", help="the d-th root of the normalized reversal of f")
    p.add_argument("--f", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=_expand)

    p = sub.add_parser("fuzz", help="random (g, h) trials, one JSON record per trial")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-deg-g", type=int, default=4)
    p.add_argument("--max-deg-h", type=int, default=4)
    p.add_argument("--max-terms-h", type=int, default=3)
    p.add_argument("--coeff-bound", type=int, default=10)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=_fuzz)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except PolyParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
