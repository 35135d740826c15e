"""Command-line front end: suite selection, budgets, and report emission.

Exit codes: 0 all checks passed, 1 verification failure (report carries a
counterexample), 2 usage or input error, 3 budget exceeded without
--force.  JSON is the machine-readable source of truth; all volatile data
(timestamp and elapsed times) is isolated under the single "timing" key so
that reports are otherwise byte-identical across runs and --jobs settings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

from .ideals import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    IdealEngine,
    IdealSpec,
)
from .rings import Multidegree, PolynomialFormatError, poly_from_json
from . import verify as suites

ENV_CACHE_DIR = "GLIDEALS_CACHE_DIR"

SUITE_DEFAULT_RANGE = {
    "dkk": (2, 4),
    "stability": (2, 4),
    "tail": (2, 4),
    "square": (2, 3),
}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="bit-cell budget for graded components (default %(default)s)")
    parser.add_argument("--force", action="store_true",
                        help="proceed past the budget guard")
    parser.add_argument("--format", choices=["json", "csv", "text"], default="text",
                        help="output format (default %(default)s)")
    parser.add_argument("--out", type=Path, default=None,
                        help="write the report to this path instead of stdout")
    parser.add_argument("--jobs", type=int, default=1,
                        help="parallel workers for independent checks (default 1)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for deterministic sampling (default 0)")
    parser.add_argument("--cache-dir", type=Path, default=None,
                        help=f"on-disk basis cache directory (env {ENV_CACHE_DIR})")


def _add_n_selector(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--n", type=int, default=None, help="single cycle bound n")
    group.add_argument("--n-max", type=int, default=None, help="run n = 2..n-max")
    parser.add_argument("--vertices", type=int, default=None,
                        help="override the default truncation N")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glideals",
        description="Exact GF(2) verification of cycle-and-quadric ideal claims",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify", help="run a verification suite")
    vsub = pv.add_subparsers(dest="suite", required=True)
    for name, desc in [
        ("dkk", "non-membership of the (n+1)-cycle plus chain strictness"),
        ("stability", "all transvections and transpositions preserve the ideal"),
        ("tail", "cycle times a disjoint edge lies in the smaller ideal"),
        ("square", "products of next-ideal generator pairs lie in the ideal"),
        ("lemma", "derivation identity at a trivalent vertex"),
        ("phi", "pairing substitution kills quadrics and cycles; kernel strictness"),
        ("all", "every suite over a range of n"),
    ]:
        sp = vsub.add_parser(name, help=desc)
        if name in ("dkk", "stability", "tail", "square"):
            _add_n_selector(sp)
            if name == "square":
                sp.add_argument("--limit", type=int, default=5000,
                                help="sample this many generator pairs above the full sweep size")
        elif name == "phi":
            sp.add_argument("--n-max", type=int, default=6,
                            help="check cycle images up to this length (default 6)")
            sp.add_argument("--vertices", type=int, default=None,
                            help="override the default truncation N")
        elif name == "all":
            sp.add_argument("--n-max", type=int, default=4, help="run n = 2..n-max (default 4)")
        _add_common(sp)

    pm = sub.add_parser("member", help="decide ideal membership of a polynomial")
    pm.add_argument("--ideal", type=int, required=True, help="cycle bound n of the ideal")
    pm.add_argument("--vertices", type=int, default=None, help="truncation N")
    pm.add_argument("--poly", type=Path, required=True, help="polynomial JSON file")
    _add_common(pm)

    ps = sub.add_parser("stats", help="exact dimension table per (ideal, degree)")
    ps.add_argument("--n", type=int, action="append", required=True,
                    help="cycle bound; repeatable")
    ps.add_argument("--degree", type=str, action="append", required=True,
                    help='dense multidegree like "2,2,2,2"; repeatable')
    ps.add_argument("--vertices", type=int, default=None, help="truncation N override")
    _add_common(ps)

    pd = sub.add_parser("dump-basis", help="snapshot one graded basis as JSON")
    pd.add_argument("--ideal", type=int, required=True)
    pd.add_argument("--vertices", type=int, default=None)
    pd.add_argument("--degree", type=str, required=True, help='dense multidegree like "2,2,2,2"')
    _add_common(pd)

    return parser


def _parse_degree(text: str) -> Multidegree:
    try:
        values = [int(x) for x in text.split(",")]
    except ValueError:
        raise ValueError(f"bad degree {text!r}: expected comma-separated integers") from None
    if any(v < 0 for v in values):
        raise ValueError(f"bad degree {text!r}: entries must be nonnegative")
    return Multidegree.from_dense(values)


def _n_range(args, suite: str) -> list[int]:
    if getattr(args, "n", None) is not None:
        if args.n < 2:
            raise ValueError("n must be at least 2")
        return [args.n]
    lo, hi = SUITE_DEFAULT_RANGE[suite]
    if getattr(args, "n_max", None) is not None:
        if args.n_max < 2:
            raise ValueError("n-max must be at least 2")
        hi = args.n_max
    return list(range(lo, hi + 1))


def _timing(t0: float, per_suite: dict) -> dict:
    return {
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "total_ms": (time.perf_counter() - t0) * 1000.0,
        "per_suite_ms": per_suite,
    }


def _envelope(command: str, params: dict, reports: list, t0: float) -> dict:
    per_suite = {}
    plain = []
    for i, rep in enumerate(reports):
        obj = rep.to_json()
        per_suite[f"{i}:{rep.suite}"] = obj.pop("elapsed_ms")
        plain.append(obj)
    verdict = "pass" if all(r.passed for r in reports) else "fail"
    return {
        "tool": "glideals",
        "command": command,
        "params": params,
        "verdict": verdict,
        "reports": plain,
        "timing": _timing(t0, per_suite),
    }


def _run_verify(args, engine: IdealEngine, t0: float) -> tuple[dict, int]:
    suite = args.suite
    jobs = max(1, args.jobs)
    if suite == "all":
        # jobs is an execution detail and must not affect the report, so it
        # is not echoed into params
        reports = suites.verify_all(n_max=args.n_max, engine=engine, jobs=jobs, seed=args.seed)
        params = {"n_max": args.n_max, "seed": args.seed}
    elif suite == "lemma":
        reports = [suites.verify_trivalent_lemma()]
        params = {}
    elif suite == "phi":
        N = args.vertices if args.vertices is not None else max(6, args.n_max)
        reports = [suites.verify_phi_kernel(N=N, n_max=args.n_max, engine=engine)]
        params = {"N": N, "n_max": args.n_max}
    else:
        ns = _n_range(args, suite)
        reports = []
        for n in ns:
            if suite == "dkk":
                reports.append(suites.verify_dkk(n, N=args.vertices, engine=engine))
            elif suite == "stability":
                reports.append(suites.verify_stability(n, N=args.vertices, engine=engine, jobs=jobs))
            elif suite == "tail":
                reports.append(suites.verify_tail_containment(n, N=args.vertices, engine=engine))
            else:
                reports.append(
                    suites.verify_square_containment(
                        n, N=args.vertices, engine=engine, seed=args.seed,
                        limit=args.limit, jobs=jobs,
                    )
                )
        params = {"n_values": ns}
        if args.vertices is not None:
            params["N"] = args.vertices
    env = _envelope(f"verify {suite}", params, reports, t0)
    return env, 0 if env["verdict"] == "pass" else 1


def _run_member(args, engine: IdealEngine, t0: float) -> tuple[dict, int]:
    doc = json.loads(args.poly.read_text())
    f = poly_from_json(doc)
    N = args.vertices if args.vertices is not None else max(4, args.ideal, f.universe.n)
    spec = IdealSpec(args.ideal, N)
    res = engine.member(f, spec)
    env = {
        "tool": "glideals",
        "command": "member",
        "params": {"ideal": args.ideal, "N": N, "poly": str(args.poly)},
        "verdict": "member" if res.contained else "non-member",
        "membership": {
            "member": res.contained,
            "certified": res.certified,
            "components": [
                {
                    "degree": str(c.degree),
                    "contained": c.contained,
                    "certified": c.certified,
                    "rank": c.rank,
                    "dim": c.dim,
                }
                for c in res.components
            ],
        },
        "timing": _timing(t0, {}),
    }
    return env, 0


def _run_stats(args, engine: IdealEngine, t0: float) -> tuple[dict, int]:
    degrees = [_parse_degree(d) for d in args.degree]
    for n in args.n:
        if n < 2:
            raise ValueError("n must be at least 2")
    table = suites.dimension_stats(args.n, degrees, N=args.vertices, engine=engine)
    env = {
        "tool": "glideals",
        "command": "stats",
        "params": {"n_values": list(args.n), "degrees": [str(d) for d in degrees]},
        "verdict": "ok",
        "rows": table.to_json(),
        "timing": _timing(t0, {}),
    }
    return env, 0


def _run_dump(args, engine: IdealEngine) -> tuple[dict, int]:
    d = _parse_degree(args.degree)
    N = args.vertices if args.vertices is not None else max(4, args.ideal, d.max_vertex)
    spec = IdealSpec(args.ideal, N)
    basis = engine.basis(spec, d)
    matrix = basis.matrix()
    ncols = len(basis.columns)
    dump = {
        "spec": {"n": spec.n, "N": spec.N},
        "d": list(d.dense()),
        "columns": [[[u, v] for (u, v) in m.vars] for m in basis.columns],
        "rank": basis.rank,
        "rows": [
            "".join("1" if (row >> j) & 1 else "0" for j in range(ncols))
            for row in matrix.rows
        ],
    }
    return dump, 0


def _stats_text(env: dict) -> str:
    lines = ["n  degree  dim_R  dim_I  dim_quotient"]
    for r in env["rows"]:
        lines.append(
            f"{r['n']}  {r['degree']}  {r['dim_R']}  {r['dim_I']}  {r['dim_quotient']}"
        )
    return "\n".join(lines) + "\n"


def _verify_text(env: dict) -> str:
    lines = []
    for rep in env["reports"]:
        failures = sum(1 for w in rep["witnesses"] if not w.get("ok", False))
        params = " ".join(f"{k}={v}" for k, v in sorted(rep["params"].items()))
        lines.append(
            f"suite={rep['suite']:<10} {params:<28} verdict={rep['verdict']:<4} "
            f"checks={len(rep['witnesses'])} failures={failures}"
        )
        if failures:
            for w in rep["witnesses"]:
                if not w.get("ok", False):
                    lines.append(f"  FAIL {w.get('element', '?')}")
    lines.append(f"overall: {env['verdict']}")
    return "\n".join(lines) + "\n"


def _member_text(env: dict) -> str:
    m = env["membership"]
    cert = "certified" if m["certified"] else "not certified"
    lines = [f"member: {str(m['member']).lower()} ({cert})"]
    for c in m["components"]:
        lines.append(
            f"  degree={c['degree']} contained={str(c['contained']).lower()} "
            f"rank={c['rank']} dim={c['dim']}"
        )
    return "\n".join(lines) + "\n"


def _render(env: dict, args) -> str:
    if args.format == "json" or args.command == "dump-basis":
        return json.dumps(env, sort_keys=True, indent=2) + "\n"
    if args.format == "csv":
        if args.command != "stats":
            raise ValueError("csv output is only defined for the stats command")
        return suites.DimensionTable(env["rows"]).to_csv()
    if args.command == "member":
        return _member_text(env)
    if args.command == "stats":
        return _stats_text(env)
    return _verify_text(env)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0

    cache_dir = args.cache_dir or (
        Path(os.environ[ENV_CACHE_DIR]) if os.environ.get(ENV_CACHE_DIR) else None
    )
    engine = IdealEngine(budget=args.budget, force=args.force, cache_dir=cache_dir)
    t0 = time.perf_counter()
    try:
        if args.command == "verify":
            env, code = _run_verify(args, engine, t0)
        elif args.command == "member":
            env, code = _run_member(args, engine, t0)
        elif args.command == "stats":
            env, code = _run_stats(args, engine, t0)
        else:
            env, code = _run_dump(args, engine)
        text = _render(env, args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PolynomialFormatError as exc:
        print(f"error: malformed polynomial JSON: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
