"""
Main application entry point.

This module exposes small, testable helpers:
- build_parser()
- build_config(args)
- run(argv)
- main()

Every command produces a JSON-able payload and a text rendering; the
``--format`` flag picks one. Diagnostics go to stderr as tagged lines.
"""

import argparse
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import pandas as pd

from .algorithms.suites import ALL_SUITES, suite_by_name
from .constants import (
    EXIT_OK,
    EXIT_USAGE_ERROR,
    EXIT_VERIFICATION_FAILURE,
    OUTPUT_FORMATS,
)
from .core import chern, cobordism, dt, fgl, vertex
from .core.config import Config
from .core.errors import BoundError, CoboScopeError, SpaceParseError
from .utils.file_utils import ResultCache
from .utils.format_utils import (
    chern_numbers_frame,
    chern_numbers_to_json,
    coefficient_frame,
    coefficient_json,
    cobordism_to_json,
    dump_json,
    frame_to_text,
    qseries_to_json,
    rational_str,
)
from .utils.space_parser import parse_divisor, parse_space

# (payload, text, passed)
Outcome = Tuple[Dict[str, Any], str, bool]


def log(message: str) -> None:
    print(f"[CoboScope] {message}", file=sys.stderr, flush=True)


# -- fgl ----------------------------------------------------------------------

def cmd_fgl_coeffs(args, config: Config) -> Outcome:
    D = config.fgl_degree
    coeffs = fgl.universal_fgl(D).coefficients()
    return ({"degree": D, "coefficients": coefficient_json(coeffs)},
            frame_to_text(coefficient_frame(coeffs, "a")), True)


def cmd_fgl_diff_coeffs(args, config: Config) -> Outcome:
    D = config.fgl_degree
    coeffs = fgl.difference_coefficients(fgl.universal_fgl(D))
    return ({"degree": D, "coefficients": coefficient_json(coeffs)},
            frame_to_text(coefficient_frame(coeffs, "b")), True)


def cmd_fgl_check(args, config: Config) -> Outcome:
    D = config.fgl_degree
    law = fgl.universal_fgl(D)
    axioms = fgl.check_axioms(law)
    difference = fgl.check_difference_identities(law)
    checks = {
        "identity": axioms.identity,
        "commutativity": axioms.commutativity,
        "associativity": axioms.associativity,
        "translation_invariance": difference.translation_invariance,
        "additivity": difference.additivity,
        "logarithm": fgl.check_logarithm(law, fgl.logarithm(D)),
    }
    text = "\n".join(f"{name:24s} {'ok' if ok else 'FAILED'}" for name, ok in checks.items())
    return {"degree": D, "checks": checks}, text, all(checks.values())


# -- chern --------------------------------------------------------------------

def cmd_chern_numbers(args, config: Config) -> Outcome:
    X = parse_space(args.space)
    numbers = chern.chern_numbers(X, config.dimension_bound)
    frame = chern_numbers_frame({X.expression(): numbers})
    return {"space": X.expression(), "dim": X.dim, "chern_numbers": chern_numbers_to_json(numbers)}, \
        frame_to_text(frame), True


def _exponent(args) -> Tuple[Any, Optional[Any], Any]:
    X = parse_space(args.space)
    if args.rel:
        s = parse_divisor(args.rel, X)
        return X, s, chern.log_dt_exponent(X, s)
    return X, None, chern.dt_exponent(X)


def cmd_exponent(args, config: Config) -> Outcome:
    X, s, value = _exponent(args)
    payload = {"space": X.expression(), "exponent": rational_str(value)}
    if s is not None:
        payload["relative_to"] = args.rel
    return payload, rational_str(value), True


# -- cobordism ----------------------------------------------------------------

def cmd_decompose(args, config: Config) -> Outcome:
    X = parse_space(args.space)
    cls = cobordism.decompose(X, config.dimension_bound)
    return {"space": X.expression(), "class": cobordism_to_json(cls)}, str(cls), True


def cmd_verify_blowup(args, config: Config) -> Outcome:
    X = parse_space(args.space)
    datum = cobordism.blowup_relation(X)
    residual = cobordism.verify_relation(datum, config.dimension_bound)
    dp = dt.check_dp_multiplicativity(datum)
    payload = {"space": X.expression(), "residual": cobordism_to_json(residual),
               "dt_residual": rational_str(dp)}
    text = f"cobordism residual: {residual}\nDT exponent residual: {dp}"
    return payload, text, residual.is_zero() and dp == 0


def cmd_milnor(args, config: Config) -> Outcome:
    coeffs = cobordism.milnor_fgl_coefficients(args.max, config.dimension_bound)
    rows = [{"coefficient": f"a_{i},{j}", "class": str(c)} for (i, j), c in coeffs.items()]
    payload = {"max": args.max,
               "coefficients": [{"i": i, "j": j, "class": cobordism_to_json(c)}
                                for (i, j), c in coeffs.items()]}
    return payload, frame_to_text(pd.DataFrame(rows)), True


# -- dt -----------------------------------------------------------------------

def cmd_zseries(args, config: Config) -> Outcome:
    N = config.q_order if args.order is None else args.order
    X = parse_space(args.space)
    if args.rel:
        z = dt.z_relative(X, parse_divisor(args.rel, X), N)
    else:
        z = dt.z_absolute(X, N)
    return {"space": X.expression(), "series": qseries_to_json(z)}, str(z), True


def cmd_check_degeneration(args, config: Config) -> Outcome:
    X = parse_space(args.space)
    s = parse_divisor(args.divisor, X)
    S = parse_space(args.S) if args.S else None
    normal = parse_divisor(args.normal, S) if (S is not None and args.normal) else None
    residual = dt.check_degeneration(X, s, S, normal)
    return ({"space": X.expression(), "divisor": args.divisor, "residual": rational_str(residual)},
            f"residual: {residual}", residual == 0)


def _cached_n_dt(X, n: int, config: Config, cache: ResultCache) -> int:
    key = ResultCache.key(X.expression(), n)
    hit = cache.get(key)
    if hit is not None and hit.denominator == 1:
        return int(hit)
    value = vertex.n_dt(X, n, seed=config.seed, jobs=config.jobs, bound=config.vertex_n_bound)
    cache.put(key, value)
    return value


def cmd_verify_conjecture1(args, config: Config) -> Outcome:
    X = parse_space(args.space)
    n_max = args.order
    z = dt.z_absolute(X, n_max)
    cache = ResultCache(config.cache_path)
    rows = []
    for n in range(n_max + 1):
        oracle = _cached_n_dt(X, n, config, cache)
        rows.append({"n": n, "M(-q)": rational_str(z.coefficient(n)), args.via: str(oracle),
                     "agree": z.coefficient(n) == oracle})
    ok = all(r["agree"] for r in rows)
    payload = {"space": X.expression(), "exponent": rational_str(chern.dt_exponent(X)), "rows": rows}
    return payload, frame_to_text(pd.DataFrame(rows)), ok


# -- vertex -------------------------------------------------------------------

def cmd_ndt(args, config: Config) -> Outcome:
    X = parse_space(args.space)
    cache = ResultCache(config.cache_path)
    value = _cached_n_dt(X, args.n, config, cache)
    return {"space": X.expression(), "n": args.n, "n_dt": str(value)}, str(value), True


def cmd_enumerate(args, config: Config) -> Outcome:
    partitions = vertex.enumerate_partitions(args.n)
    boxes = [[list(b) for b in p.sort_key()] for p in partitions]
    text = "\n".join(" ".join(f"{b}" for b in p.sort_key()) or "(empty)" for p in partitions)
    return {"n": args.n, "count": len(partitions), "partitions": boxes}, \
        f"{len(partitions)} plane partition(s)\n{text}", True


# -- verify-all ---------------------------------------------------------------

def cmd_verify_all(args, config: Config) -> Outcome:
    suites = [suite_by_name(args.suite)] if args.suite else ALL_SUITES
    frames = []
    for suite in suites:
        frame = suite.to_dataframe(config)
        failed = len(frame) - int(frame["passed"].sum())
        log(f"suite {suite.name}: {len(frame) - failed}/{len(frame)} checks passed")
        frames.append(frame)
    report = pd.concat(frames, ignore_index=True)
    ok = bool(report["passed"].all())
    checks = [{"suite": r.suite, "check": r.check, "passed": bool(r.passed), "detail": r.detail}
              for r in report.itertuples(index=False)]
    payload = {"passed": ok, "checks": checks}
    return payload, frame_to_text(report[["suite", "check", "passed"]]), ok


# -- parser -------------------------------------------------------------------

def _space_command(sub, name: str, handler: Callable, help_text: str):
    p = sub.add_parser(name, help=help_text)
    p.add_argument("space", help="space expression, e.g. P3, P2*P1, PB(P2; 0, h), Bl(P3)")
    p.set_defaults(handler=handler)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coboScope",
                                     description="Exact computations in rational algebraic cobordism.")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default=None, help="output format")
    parser.add_argument("--seed", type=int, default=None, help="seed for vertex specializations")
    parser.add_argument("--jobs", type=int, default=None, help="worker processes for the vertex sum")
    parser.add_argument("--cache", type=Path, default=None, help="result cache file")
    parser.add_argument("--no-cache", action="store_true", help="do not read or write the cache")
    parser.add_argument("--fgl-degree", type=int, default=None)
    parser.add_argument("--q-order", type=int, default=None)
    parser.add_argument("--vertex-bound", type=int, default=None)
    parser.add_argument("--dimension-bound", type=int, default=None)
    groups = parser.add_subparsers(dest="group", required=True)

    g = groups.add_parser("fgl", help="formal group laws").add_subparsers(dest="command", required=True)
    for name, handler in (("coeffs", cmd_fgl_coeffs), ("check", cmd_fgl_check),
                          ("diff-coeffs", cmd_fgl_diff_coeffs)):
        p = g.add_parser(name)
        p.add_argument("--degree", type=int, default=None)
        p.set_defaults(handler=handler)

    c = groups.add_parser("chern", help="Chern numbers and DT exponents").add_subparsers(
        dest="command", required=True)
    _space_command(c, "numbers", cmd_chern_numbers, "all Chern numbers")
    _space_command(c, "exponent", cmd_exponent, "DT exponent").add_argument("--rel", default=None)

    b = groups.add_parser("cobordism", help="rational cobordism ring").add_subparsers(
        dest="command", required=True)
    _space_command(b, "decompose", cmd_decompose, "class in the product basis")
    _space_command(b, "verify-blowup", cmd_verify_blowup, "point blow-up relation")
    p = b.add_parser("fgl-coeffs", help="a_ij from Milnor hypersurfaces")
    p.add_argument("--max", type=int, default=4)
    p.set_defaults(handler=cmd_milnor)

    d = groups.add_parser("dt", help="DT partition functions").add_subparsers(dest="command", required=True)
    p = _space_command(d, "zseries", cmd_zseries, "Z(X, q) or Z(X/S, q)")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--rel", default=None)
    _space_command(d, "exponent", cmd_exponent, "DT exponent").add_argument("--rel", default=None)
    p = _space_command(d, "check-degeneration", cmd_check_degeneration, "degeneration residual")
    p.add_argument("divisor")
    p.add_argument("--S", default=None, help="the divisor as a space")
    p.add_argument("--normal", default=None, help="O_S(S) as a divisor on S")
    p = _space_command(d, "verify-conjecture1", cmd_verify_conjecture1, "M(-q)^n against the vertex")
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--via", choices=["vertex"], default="vertex")

    v = groups.add_parser("vertex", help="localization oracle").add_subparsers(dest="command", required=True)
    p = _space_command(v, "ndt", cmd_ndt, "N_{n,0} by localization")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=None, dest="local_seed")
    p.add_argument("--jobs", type=int, default=None, dest="local_jobs")
    p = v.add_parser("enumerate", help="plane partitions of size n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_enumerate)

    p = groups.add_parser("verify-all", help="run every acceptance suite")
    p.add_argument("--suite", choices=[s.name for s in ALL_SUITES], default=None)
    p.set_defaults(handler=cmd_verify_all)
    return parser


def _local(args, name: str, fallback):
    """A command-level flag when given, else the global one."""
    value = getattr(args, name, None)
    return fallback if value is None else value


def build_config(args) -> Config:
    base = Config.from_environment()
    if args.cache is not None:
        base = base.with_overrides(cache_path=args.cache)
    if args.no_cache:
        base = replace(base, cache_path=None)
    return base.with_overrides(
        output_format=args.format,
        seed=_local(args, "local_seed", args.seed),
        jobs=_local(args, "local_jobs", args.jobs),
        fgl_degree=_local(args, "degree", args.fgl_degree),
        q_order=args.q_order,
        vertex_n_bound=args.vertex_bound,
        dimension_bound=args.dimension_bound,
    ).validate()


def emit(outcome: Outcome, config: Config) -> None:
    payload, text, _ = outcome
    if config.output_format == "json":
        print(dump_json(payload))
    else:
        print(text)


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE_ERROR
    try:
        config = build_config(args)
        outcome = args.handler(args, config)
    except (SpaceParseError, BoundError) as e:
        log(f"usage error: {e}")
        return EXIT_USAGE_ERROR
    except CoboScopeError as e:
        log(f"{type(e).__name__}: {e}")
        return EXIT_VERIFICATION_FAILURE
    emit(outcome, config)
    if not outcome[2]:
        log("verification failed")
        return EXIT_VERIFICATION_FAILURE
    return EXIT_OK


def main() -> None:
    """Main entry point: run the command line and exit with its code."""
    sys.exit(run())


if __name__ == "__main__":
    main()
