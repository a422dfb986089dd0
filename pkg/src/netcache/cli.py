"""Command-line interface: solve, analyze, reduce, transform, verify, bench.

Exit codes: 0 = success / yes, 1 = no, 2 = parse or usage error,
3 = invalid instance, 4 = size guard exceeded, 5 = not homogeneous,
6 = no algorithm fits the budget, 7 = invalid source problem,
8 = solver disagreement.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from fractions import Fraction

from . import fileformat, generate, oracles, reductions, solvers
from .errors import (
    BadDistribution,
    DanglingId,
    InvalidCase,
    InvalidFormula,
    InvalidInstance,
    NetcacheError,
    NoFeasibleAlgorithm,
    NonPositive,
    NotHomogeneous,
    ParseError,
    SolverDisagreement,
    TooLarge,
    UnknownUser,
)
from .model import (
    Instance,
    cache_hit_rate,
    classify_variant,
    is_feasible,
    parameter_profile,
    validate,
)

EXIT_CODES = (
    (ParseError, 2),
    ((DanglingId, BadDistribution, NonPositive, UnknownUser), 3),
    (TooLarge, 4),
    (NotHomogeneous, 5),
    (NoFeasibleAlgorithm, 6),
    ((InvalidFormula, InvalidInstance, InvalidCase), 7),
    (SolverDisagreement, 8),
)


def _frac(text: str) -> Fraction:
    return fileformat._parse_fraction(text, 0, 0)


def _load_instance(path: str) -> tuple[Instance, Fraction | None]:
    with open(path, encoding="utf-8") as fh:
        return fileformat.parse_instance_document(fh.read())


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    instance, file_ell = _load_instance(args.path)
    ell = _frac(args.ell) if args.ell else file_ell
    result = solvers.solve(instance, args.algo, **(
        {"budget": args.budget} if args.algo == "auto" else {}
    ))
    print(f"{result.optimum.numerator}/{result.optimum.denominator}")
    status = 0
    if ell is not None:
        yes = result.optimum >= ell
        print("YES" if yes else "NO")
        status = 0 if yes else 1
    if args.witness:
        sys.stdout.write(fileformat.serialize_allocation(result.witness))
    return status


def cmd_analyze(args) -> int:
    instance, _ = _load_instance(args.path)
    prof = parameter_profile(instance)
    print(
        f"C={prof.num_caches} U={prof.num_users} S={prof.num_contents} "
        f"K={prof.max_capacity} delta={prof.max_degree} "
        f"lambda={prof.max_request_support} total_size={prof.total_size} "
        f"homogeneous={'true' if prof.homogeneous else 'false'} "
        f"vc_upper={prof.vc_upper}"
    )
    print(f"variant={classify_variant(instance)}")
    for name, bound in sorted(solvers.algorithm_bounds(instance).items()):
        print(f"bound {name}={bound}")
    return 0


_REDUCERS = {
    "nae3sat": (fileformat.parse_cnf, lambda f, a: reductions.from_monotone_nae3sat(f)),
    "binpack": (
        fileformat.parse_bin_packing,
        lambda inst, a: reductions.from_unary_bin_packing(inst, a.split_users),
    ),
    "knapsack": (
        fileformat.parse_knapsack,
        lambda inst, a: reductions.from_knapsack(inst, a.split_users),
    ),
    "maxkvc": (fileformat.parse_graph, lambda g, a: reductions.from_max_k_vertex_cover(g)),
    "planar3sat": (
        fileformat.parse_cnf,
        lambda f, a: reductions.from_planar_3sat_e3(f),
    ),
}


def cmd_reduce(args) -> int:
    parser, construct = _REDUCERS[getattr(args, "from")]
    with open(args.source, encoding="utf-8") as fh:
        source = parser(fh.read())
    out = construct(source, args)
    _emit(fileformat.serialize_instance(out.instance, out.threshold), args.output)
    return 0


def cmd_transform(args) -> int:
    instance, ell = _load_instance(args.path)
    transformed = reductions.interreduce(instance, args.case)
    _emit(fileformat.serialize_instance(transformed, ell), args.output)
    return 0


def _applicable_solvers(instance: Instance) -> list[str]:
    prof = parameter_profile(instance)
    names = []
    if prof.num_contents * prof.num_caches <= solvers.DEFAULT_BRUTE_LIMIT:
        names.append("brute")
    state_space = 1
    for cap in validate(instance).caches.values():
        state_space *= cap + 1
    if state_space <= solvers.DEFAULT_STATE_GUARD:
        names.append("capdp")
    hoods = {frozenset(instance.cache_neighbors(c)) for c in instance.caches}
    if prof.homogeneous and len(hoods) * (prof.max_capacity + 1) <= 16:
        names.append("typedp")
    if prof.homogeneous and "capdp" in names:
        names.append("homnc-u")
    return names


def cmd_bench(args) -> int:
    if args.gen:
        params = dict(kv.split("=") for kv in args.gen.split(","))
        instance = generate.structured_homogeneous(
            C=int(params["c"]), K=int(params["k"]),
            S=int(params["s"]), U=int(params["u"]),
        )
    else:
        instance, _ = _load_instance(args.path)
    print("algorithm,states_explored,elapsed_ms,optimum")
    optima = {}
    for name in _applicable_solvers(instance):
        elapsed = 0.0
        result = None
        for _ in range(args.repetitions):
            t0 = time.perf_counter()
            result = solvers.SOLVERS[name](instance)
            elapsed += time.perf_counter() - t0
        optima[name] = result.optimum
        print(
            f"{name},{result.stats.states_explored},"
            f"{elapsed * 1000 / args.repetitions:.3f},"
            f"{result.optimum.numerator}/{result.optimum.denominator}"
        )
    if len(set(optima.values())) > 1:
        raise SolverDisagreement(f"optima disagree: {optima}")
    return 0


_VERIFY_KINDS = (
    "solvers",
    "nae3sat",
    "binpack",
    "binpack-split",
    "knapsack",
    "knapsack-split",
    "maxkvc",
    "planar3sat",
)


def _verify_trial(kind: str, rng: random.Random, args) -> tuple[bool, str]:
    if kind == "solvers":
        instance = generate.random_instance(
            rng,
            max_caches=args.max_c,
            max_users=args.max_u,
            max_contents=args.max_s,
            max_size=args.max_size,
            max_cap=args.max_cap,
        )
        prof = parameter_profile(instance)
        reference = solvers.brute_force(instance)
        answers = {"brute": reference.optimum}
        answers["capdp"] = solvers.capacity_vector_dp(instance).optimum
        hoods = {frozenset(instance.cache_neighbors(c)) for c in instance.caches}
        if len(hoods) * (prof.max_capacity + 1) <= 16:
            answers["typedp"] = solvers.cache_type_dp(instance).optimum
        if prof.homogeneous:
            answers["homnc-u"] = solvers.solve_homnc_by_users(instance).optimum
        ok = len(set(answers.values())) == 1
        detail = " ".join(
            f"{k}={v.numerator}/{v.denominator}" for k, v in sorted(answers.items())
        )
        return ok, f"C={prof.num_caches} U={prof.num_users} S={prof.num_contents} {detail}"

    if kind == "nae3sat":
        formula = generate.random_monotone_b3(rng)
        out = reductions.from_monotone_nae3sat(formula)
        expected = oracles.nae_oracle(formula)
    elif kind.startswith("binpack"):
        src = generate.random_bin_packing(rng, max_items=6, max_capacity=8)
        out = reductions.from_unary_bin_packing(src, kind.endswith("split"))
        expected = oracles.binpack_oracle(src)
    elif kind.startswith("knapsack"):
        src = generate.random_knapsack(rng, max_items=8)
        out = reductions.from_knapsack(src, kind.endswith("split"))
        expected = oracles.knapsack_oracle(src) >= src.target
    elif kind == "maxkvc":
        src = generate.random_graph(rng, max_vertices=5, max_edges=5)
        out = reductions.from_max_k_vertex_cover(src)
        expected = oracles.max_kvc_oracle(src) >= src.t
    elif kind == "planar3sat":
        formula = generate.random_e3_formula(rng, max_vars=4)
        out = reductions.from_planar_3sat_e3(formula)
        expected = oracles.sat_oracle(formula)
    else:
        raise InvalidCase(kind)

    result = solvers.capacity_vector_dp(out.instance, state_guard=2**45)
    got = result.optimum >= out.threshold
    witness_ok = is_feasible(out.instance, result.witness) and (
        cache_hit_rate(out.instance, result.witness) == result.optimum
    )
    ok = got == expected and witness_ok
    return ok, f"oracle={expected} decide={got} witness_ok={witness_ok}"


def cmd_verify(args) -> int:
    lines = []
    failures = 0
    for i in range(args.trials):
        kind = _VERIFY_KINDS[i % len(_VERIFY_KINDS)]
        rng = random.Random(f"{args.seed}-{i}")
        ok, detail = _verify_trial(kind, rng, args)
        if not ok:
            failures += 1
        lines.append(
            f"trial={i} kind={kind} seed={args.seed} {detail} "
            f"result={'pass' if ok else 'FAIL'}"
        )
    for line in lines:
        print(line)
    print(f"passed {args.trials - failures}/{args.trials}")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netcache", description="Exact Network-Caching solver suite."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("path")
    p.add_argument("--algo", choices=("auto", "brute", "capdp", "typedp", "homnc-u"),
                   default="auto")
    p.add_argument("--ell", help="decision threshold as num/den")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--budget", type=int, default=solvers.DEFAULT_STATE_GUARD)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("analyze", help="print the parameter profile")
    p.add_argument("path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reduce", help="build a caching instance from a source problem")
    p.add_argument("--from", required=True, choices=sorted(_REDUCERS), dest="from")
    p.add_argument("source")
    p.add_argument("--split-users", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("transform", help="apply an interreduction case")
    p.add_argument("path")
    p.add_argument("--case", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("verify", help="randomized oracle-equivalence harness")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-c", type=int, default=3)
    p.add_argument("--max-u", type=int, default=4)
    p.add_argument("--max-s", type=int, default=5)
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--max-cap", type=int, default=4)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time every applicable solver, emit CSV")
    p.add_argument("path", nargs="?")
    p.add_argument("--gen", help="generator spec, e.g. c=2,k=60,s=120,u=40")
    p.add_argument("--repetitions", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "bench" and not (args.path or args.gen):
        print("bench needs a path or --gen spec", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NetcacheError as exc:
        for types, code in EXIT_CODES:
            if isinstance(exc, types):
                print(f"error: {exc}", file=sys.stderr)
                return code
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
