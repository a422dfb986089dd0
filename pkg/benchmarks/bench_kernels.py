"""Compare the compiled kernels against their pure-Python twins.

Runs both implementations on the same prepared inputs, checks that the
results are bit-identical, and prints one CSV row per (kernel, backend)
pair. Usage:

    python benchmarks/bench_kernels.py [--repetitions N] [--seed S]
"""

import argparse
import random
import sys
import time

from netcache import _core_py as pure
from netcache import generate, kernels, solvers


def _prepared(instance):
    prep = solvers._prepare(instance)
    subsets = [solvers._feasible_subsets(prep.sizes, cap) for cap in prep.caps]
    gains_content = [
        [prep.gains_user[u][i] for u in range(len(prep.user_ids))]
        for i in range(len(prep.content_ids))
    ]
    return prep, subsets, gains_content


def _time(fn, args, repetitions):
    best = None
    result = None
    for _ in range(repetitions):
        t0 = time.perf_counter()
        result = fn(*args)
        elapsed = time.perf_counter() - t0
        best = elapsed if best is None else min(best, elapsed)
    return result, best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repetitions", type=int, default=3)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args(argv)

    if kernels.compiled is None:
        print("compiled extension unavailable; nothing to compare", file=sys.stderr)
        return 1

    rng = random.Random(f"bench-{args.seed}")
    workloads = [
        ("capdp-wide", generate.structured_homogeneous(C=2, K=60, S=120, U=40)),
        ("capdp-deep", generate.structured_homogeneous(C=6, K=6, S=30, U=12)),
        ("brute-dense", generate.random_instance(
            rng, max_caches=4, max_users=5, max_contents=6, max_cap=5)),
        ("brute-small", generate.random_instance(rng)),
    ]

    print("workload,kernel,backend,elapsed_ms,value")
    for name, instance in workloads:
        prep, subsets, gains_content = _prepared(instance)
        capdp_args = (prep.caps, prep.sizes, gains_content, prep.adj_masks)
        brute_args = (subsets, prep.adj_masks, prep.gains_user)
        runs = (
            ("capdp", pure.capdp, kernels.compiled.capdp, capdp_args),
            ("brute", pure.brute_force, kernels.compiled.brute_force, brute_args),
        )
        for kernel, pure_fn, compiled_fn, fn_args in runs:
            if kernel == "brute" and name.startswith("capdp"):
                continue  # structured instances exceed the brute-force scale
            if kernel == "capdp" and name.startswith("brute"):
                continue
            r_pure, t_pure = _time(pure_fn, fn_args, args.repetitions)
            r_comp, t_comp = _time(compiled_fn, fn_args, args.repetitions)
            if r_pure != r_comp:
                print(f"MISMATCH on {name}/{kernel}: {r_pure} != {r_comp}",
                      file=sys.stderr)
                return 2
            print(f"{name},{kernel},pure,{t_pure * 1000:.3f},{r_pure[0]}")
            print(f"{name},{kernel},compiled,{t_comp * 1000:.3f},{r_comp[0]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
