"""Command line entry point: ``qeulerian poly | verify | homology | stats``.

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or
resource-guard error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from typing import Callable, Sequence

from . import genfun, posetlab, quasisym, wordcomb
from .exactalg import var_index
from .genfun import Report
from .permstat import Perm, compute_stats, partitions

SCHEMA = 1

POLY_LIMIT = 11
HOMOLOGY_LIMITS = {None: 5, 2: 4, 3: 3}

SUITES = (
    "thm1-1", "thm1-2", "thm2-1", "thm2-2", "cor2-3", "cor2-4", "thm2-6",
    "rec9", "prop2-5", "thm3-3", "eq13", "thm4-1",
)
EXTRA_SUITES = ("eq1", "reductions", "eq6", "symmetry", "eq13-reversed")

# bounds used when no explicit bound is given, and for --small
SMALL = {
    "n": 6,
    "homology_n": 4,
    "eq13_n": 3,
    "q": 2,
    "word_letters": 4,
}


class UsageError(Exception):
    pass


def _guard(value: int, limit: int, what: str, force: bool) -> None:
    if value > limit and not force:
        raise UsageError(f"{what}={value} exceeds the guard {limit}; pass --force to run anyway")


# -- suites -------------------------------------------------------------------------


def _range_n(args, default: int, start: int = 1) -> range:
    n = args.n if args.n is not None else default
    return range(start, n + 1)


def _suite_reports(suite: str, args) -> list[Report]:
    th = args.threads
    small_n = SMALL["n"]
    if suite == "thm1-1":
        N = args.N if args.N is not None else (args.n if args.n is not None else small_n)
        _guard(N, 10, "N", args.force)
        return [genfun.verify_thm_1_1(N, th)]
    if suite == "eq1":
        N = args.N if args.N is not None else (args.n if args.n is not None else small_n)
        _guard(N, 10, "N", args.force)
        return [genfun.verify_eulerian_egf(N)]
    if suite == "thm1-2":
        ns = _range_n(args, small_n, 0)
        _guard(ns.stop - 1, 10, "n", args.force)
        return [genfun.verify_thm_1_2(n, th) for n in ns]
    if suite == "thm4-1":
        ns = _range_n(args, small_n)
        _guard(ns.stop - 1, 10, "n", args.force)
        return [genfun.verify_thm_4_1(n, th) for n in ns]
    if suite == "reductions":
        ns = _range_n(args, small_n, 0)
        _guard(ns.stop - 1, 10, "n", args.force)
        return [genfun.verify_reductions(n) for n in ns]
    if suite == "thm2-1":
        N = args.N if args.N is not None else (args.n if args.n is not None else small_n)
        m = args.m if args.m is not None else N
        _guard(N, 7, "N", args.force)
        return [quasisym.verify_thm_2_1(N, m)]
    if suite in ("cor2-3", "rec9"):
        fn = quasisym.verify_cor_2_3 if suite == "cor2-3" else quasisym.verify_recurrence_9
        ns = _range_n(args, small_n, 0)
        _guard(ns.stop - 1, 7, "n", args.force)
        return [fn(n, args.m if args.m is not None else n) for n in ns]
    if suite == "eq6":
        N = args.N if args.N is not None else (args.n if args.n is not None else small_n)
        _guard(N, 7, "N", args.force)
        return [quasisym.verify_specialization_6(N, max(N, 1))]
    if suite == "symmetry":
        ns = _range_n(args, small_n, 0)
        _guard(ns.stop - 1, 7, "n", args.force)
        return [_symmetry_report(n, args.m if args.m is not None else max(n, 1)) for n in ns]
    if suite == "thm2-2":
        ns = _range_n(args, small_n - 1)
        m = args.m if args.m is not None else SMALL["word_letters"]
        _guard(ns.stop - 1, 6, "n", args.force)
        return [
            wordcomb.verify_thm_2_2(lam, j, m)
            for n in ns
            for lam in partitions(n)
            for j in range(n)
        ]
    if suite == "prop2-5":
        ns = _range_n(args, small_n - 1)
        m = args.m if args.m is not None else SMALL["word_letters"]
        _guard(ns.stop - 1, 6, "n", args.force)
        return [wordcomb.verify_prop_2_5(n, m) for n in ns]
    if suite == "cor2-4":
        ns = _range_n(args, small_n, 0)
        _guard(ns.stop - 1, 6, "n", args.force)
        return [
            wordcomb.verify_cor_2_4(n, j, args.m if args.m is not None else n)
            for n in ns
            for j in range(max(n, 1))
        ]
    if suite == "thm2-6":
        ns = _range_n(args, small_n)
        _guard(ns.stop - 1, 6, "n", args.force)
        return [wordcomb.verify_thm_2_6_contract(n, args.m if args.m is not None else n) for n in ns]
    if suite == "thm3-3":
        ns = _range_n(args, SMALL["homology_n"])
        _guard(ns.stop - 1, HOMOLOGY_LIMITS[None], "n", args.force)
        return [posetlab.verify_thm_3_3_dims(n) for n in ns]
    if suite in ("eq13", "eq13-reversed"):
        n = args.n if args.n is not None else SMALL["eq13_n"]
        q = args.q if args.q is not None else SMALL["q"]
        if q not in (2, 3):
            raise UsageError(f"unsupported q={q}; use 2 or 3")
        _guard(n, HOMOLOGY_LIMITS[q], "n", args.force)
        fn = posetlab.verify_eq_13_14 if suite == "eq13" else posetlab.verify_eq_13_14_reversed
        return [fn(n, q)]
    raise UsageError(f"unknown suite {suite!r}")


def _symmetry_report(n: int, m: int) -> Report:
    for j in range(max(n, 1)):
        if not quasisym.is_symmetric(quasisym.Q_nj(n, j, m), m):
            return Report("symmetry", n, False, {"n": n, "j": j, "lambda": None}, {"m": m})
        for lam in partitions(n):
            if not quasisym.is_symmetric(quasisym.Q_lambda_j(lam, j, m), m):
                return Report("symmetry", n, False, {"n": n, "j": j, "lambda": list(lam)}, {"m": m})
    return Report("symmetry", n, True, None, {"m": m})


# -- commands -------------------------------------------------------------------------


POLY_FUNCS: dict[str, Callable] = {
    "maj-exc": genfun.maj_exc_poly,
    "aid-des": genfun.aid_des_poly,
    "fix-refined": genfun.fix_refined_poly,
    "eulerian": genfun.eulerian_poly,
}


def _emit_json(payload: dict, out) -> None:
    out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def cmd_poly(args, out) -> int:
    _guard(args.n, POLY_LIMIT, "n", args.force)
    start = time.perf_counter()
    p = POLY_FUNCS[args.pair](args.n, args.threads)
    elapsed = time.perf_counter() - start
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA,
                "command": "poly",
                "parameters": {"pair": args.pair, "n": args.n},
                "poly": str(p),
                "pass": True,
                "wall_time": round(elapsed, 6),
            },
            out,
        )
    elif args.csv:
        names = p.variables()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(names + ["coefficient"])
        for mono, c in p.sorted_terms():
            exps = dict(mono)
            writer.writerow([exps.get(var_index(v), 0) for v in names] + [c])
    else:
        out.write(str(p) + "\n")
    return 0


def cmd_verify(args, out) -> int:
    suites = SUITES if args.suite == "all" else (args.suite,)
    if args.small:
        args.N = args.n = args.m = args.q = None
    start = time.perf_counter()
    reports: list[Report] = []
    for suite in suites:
        reports.extend(_suite_reports(suite, args))
    elapsed = time.perf_counter() - start
    ok = all(r.passed for r in reports)
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA,
                "command": "verify",
                "parameters": {
                    "suite": args.suite, "N": args.N, "n": args.n, "m": args.m,
                    "q": args.q, "small": args.small,
                },
                "pass": ok,
                "reports": [r.to_dict() for r in reports],
                "wall_time": round(elapsed, 6),
            },
            out,
        )
    else:
        for r in reports:
            extra = ""
            if r.details:
                extra = " " + " ".join(f"{k}={v}" for k, v in sorted(r.details.items()))
            status = "PASS" if r.passed else "FAIL"
            out.write(f"{status} {r.theorem} n={r.n_or_N}{extra}\n")
            if r.first_mismatch:
                out.write(f"     first mismatch: {json.dumps(r.first_mismatch, sort_keys=True)}\n")
        out.write(f"{'all passed' if ok else 'FAILED'}: {sum(r.passed for r in reports)}"
                  f"/{len(reports)} checks\n")
    return 0 if ok else 1


def cmd_homology(args, out) -> int:
    q = args.q if args.spec == "bnq" else None
    if args.spec == "bnq" and q not in (2, 3):
        raise UsageError("bnq needs --q 2 or --q 3")
    _guard(args.n, HOMOLOGY_LIMITS[q], "n", args.force)
    if not 1 <= args.j <= args.n:
        raise UsageError(f"--j must be in 1..{args.n}")
    start = time.perf_counter()
    H = posetlab.betti_numbers(posetlab.rees_ideal(args.n, args.j, q))
    elapsed = time.perf_counter() - start
    first = 0 if H.top_dimension >= 0 else -1
    values = [H[d] for d in range(first, H.top_dimension + 1)]
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA,
                "command": "homology",
                "parameters": {"spec": args.spec, "n": args.n, "j": args.j, "q": q},
                "betti": {str(d): b for d, b in sorted(H.betti.items())},
                "face_counts": {str(d): c for d, c in sorted(H.face_counts.items())},
                "top_dimension": H.top_dimension,
                "pass": True,
                "wall_time": round(elapsed, 6),
            },
            out,
        )
    else:
        out.write(f"reduced Betti numbers, dims {first}..{H.top_dimension}: {values}\n")
    return 0


def cmd_stats(args, out) -> int:
    try:
        p = Perm.parse(args.perm)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    s = compute_stats(p)
    record = {
        "perm": str(p), "des": s.des, "exc": s.exc, "maj": s.maj, "inv": s.inv,
        "fix": s.fix, "Des": sorted(s.Des), "Exc": sorted(s.Exc), "Exd": sorted(s.Exd),
        "ai": s.ai, "aid": s.aid, "cycle_type": list(s.cycle_type),
    }
    if args.json:
        _emit_json({"schema": SCHEMA, "command": "stats", **record}, out)
    else:
        for k, v in record.items():
            out.write(f"{k}: {v}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    from .genfun import default_threads

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--force", action="store_true", help="override resource guards")
    common.add_argument(
        "--threads", type=int, default=default_threads(),
        help="worker processes for S_n scans (default: $QEL_THREADS or 1)",
    )

    parser = argparse.ArgumentParser(
        prog="qeulerian",
        description="Exact (maj, exc) q-Eulerian computations and identity checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_poly = sub.add_parser("poly", parents=[common], help="print a statistic polynomial")
    p_poly.add_argument("pair", choices=sorted(POLY_FUNCS))
    p_poly.add_argument("--n", type=int, required=True)
    p_poly.add_argument("--csv", action="store_true", help="coefficient table")

    p_ver = sub.add_parser("verify", parents=[common], help="run identity checks")
    p_ver.add_argument("suite", choices=SUITES + EXTRA_SUITES + ("all",))
    p_ver.add_argument("--N", type=int, help="series order")
    p_ver.add_argument("--n", type=int, help="largest size")
    p_ver.add_argument("--m", type=int, help="number of variables / largest letter")
    p_ver.add_argument("--q", type=int, help="field size for eq13")
    p_ver.add_argument("--small", action="store_true", help="default desk-scale bounds")

    p_hom = sub.add_parser("homology", parents=[common], help="Betti numbers of I_{n,j}")
    p_hom.add_argument("spec", choices=("bn", "bnq"))
    p_hom.add_argument("--n", type=int, required=True)
    p_hom.add_argument("--j", type=int, required=True)
    p_hom.add_argument("--q", type=int)

    p_st = sub.add_parser("stats", parents=[common], help="statistics of one permutation")
    p_st.add_argument("perm", help='one-line notation, e.g. 32541 or "10,3,1,..."')
    return parser


COMMANDS = {"poly": cmd_poly, "verify": cmd_verify, "homology": cmd_homology, "stats": cmd_stats}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "poly" and args.n < 0:
            raise UsageError("--n must be >= 0")
        if args.command == "poly" and args.pair == "aid-des" and args.n < 1:
            raise UsageError("aid-des needs --n >= 1")
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        sys.stderr.write(f"qeulerian: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
