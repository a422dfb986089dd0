"""Exact solvers and optimum-preserving preprocessing.

Four algorithms: exhaustive branching over per-cache content subsets,
a sparse capacity-vector DP, a cache-type DP (caches grouped by served
users and remaining capacity), and the homogeneous composition that
amalgamates same-neighborhood caches before running the capacity DP.
All optima are exact rationals; every solver also reconstructs an optimal
witness allocation and is deterministic for a given input.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .errors import (
    InvalidCase,
    NoFeasibleAlgorithm,
    NotHomogeneous,
    TooLarge,
)
from .model import (
    Allocation,
    Instance,
    parameter_profile,
    validate,
)

DEFAULT_BRUTE_LIMIT = 24  # refuse brute force when S*C exceeds this
DEFAULT_STATE_GUARD = 10**8


@dataclass(frozen=True)
class SolveStats:
    algorithm: str
    states_explored: int
    elapsed: float


@dataclass(frozen=True)
class SolveResult:
    optimum: Fraction
    witness: Allocation
    stats: SolveStats


@dataclass(frozen=True)
class _Prepared:
    instance: Instance
    cache_ids: list[str]
    user_ids: list[str]
    content_ids: list[str]
    caps: list[int]
    sizes: list[int]
    adj_masks: list[int]
    gains_user: list[list[int]]  # [user][content], scaled by denom
    denom: int


def _prepare(instance: Instance) -> _Prepared:
    inst = validate(instance)
    cache_ids = inst.cache_ids()
    user_ids = inst.user_ids()
    content_ids = inst.content_ids()
    cache_index = {c: t for t, c in enumerate(cache_ids)}
    content_index = {s: i for i, s in enumerate(content_ids)}

    terms = []  # [user][content] Fraction w(u)*p(u,s)
    denom = 1
    for u in user_ids:
        usr = inst.users[u]
        row = [Fraction(0)] * len(content_ids)
        for s, p in usr.requests.items():
            if p > 0:
                term = usr.weight * p
                row[content_index[s]] = term
                denom = math.lcm(denom, term.denominator)
        terms.append(row)
    gains_user = [[int(t * denom) for t in row] for row in terms]

    user_index = {u: i for i, u in enumerate(user_ids)}
    adj_masks = [0] * len(user_ids)
    for c, u in inst.edges:
        adj_masks[user_index[u]] |= 1 << cache_index[c]

    return _Prepared(
        instance=inst,
        cache_ids=cache_ids,
        user_ids=user_ids,
        content_ids=content_ids,
        caps=[inst.caches[c] for c in cache_ids],
        sizes=[inst.contents[s] for s in content_ids],
        adj_masks=adj_masks,
        gains_user=gains_user,
        denom=denom,
    )


def _allocation_from_masks(prep: _Prepared, masks: list[int]) -> Allocation:
    store = {}
    for t, m in enumerate(masks):
        if m:
            store[prep.cache_ids[t]] = frozenset(
                prep.content_ids[i] for i in range(len(prep.content_ids)) if m >> i & 1
            )
    return Allocation(store)


def _feasible_subsets(sizes: list[int], cap: int) -> list[int]:
    """All content bitmasks fitting the capacity, in lexicographic order of
    the underlying sorted content tuples."""
    out: list[int] = []
    n = len(sizes)

    def gen(mask: int, start: int, load: int) -> None:
        out.append(mask)
        for j in range(start, n):
            if load + sizes[j] <= cap:
                gen(mask | (1 << j), j + 1, load + sizes[j])

    gen(0, 0, 0)
    return out


def brute_force(instance: Instance, limit: int = DEFAULT_BRUTE_LIMIT) -> SolveResult:
    """Enumerate all feasible allocations, branching per cache over content
    subsets; ties go to the lexicographically smallest allocation."""
    prep = _prepare(instance)
    t0 = time.perf_counter()
    C = len(prep.caps)
    S = len(prep.sizes)
    if S * C > limit:
        raise TooLarge(f"brute force refused: S*C = {S * C} > {limit}")
    subsets = [_feasible_subsets(prep.sizes, cap) for cap in prep.caps]
    best, masks, nodes = kernels.brute_force(subsets, prep.adj_masks, prep.gains_user)
    return SolveResult(
        optimum=Fraction(best, prep.denom),
        witness=_allocation_from_masks(prep, masks),
        stats=SolveStats("brute", nodes, time.perf_counter() - t0),
    )


def capacity_vector_dp(
    instance: Instance, state_guard: int = DEFAULT_STATE_GUARD
) -> SolveResult:
    """Dynamic program over vectors of remaining per-cache capacities."""
    prep = _prepare(instance)
    t0 = time.perf_counter()
    state_space = 1
    for cap in prep.caps:
        state_space *= cap + 1
    if state_space > state_guard:
        raise TooLarge(
            f"capacity-vector DP refused: state space {state_space} > {state_guard}"
        )
    gains_content = [
        [prep.gains_user[u][i] for u in range(len(prep.user_ids))]
        for i in range(len(prep.content_ids))
    ]
    best, decisions, states = kernels.capdp(
        prep.caps, prep.sizes, gains_content, prep.adj_masks
    )
    store_masks = [0] * len(prep.caps)
    for i, m in enumerate(decisions):
        for t in range(len(prep.caps)):
            if m >> t & 1:
                store_masks[t] |= 1 << i
    return SolveResult(
        optimum=Fraction(best, prep.denom),
        witness=_allocation_from_masks(prep, store_masks),
        stats=SolveStats("capdp", states, time.perf_counter() - t0),
    )


def cache_type_dp(
    instance: Instance, state_guard: int = DEFAULT_STATE_GUARD
) -> SolveResult:
    """Dynamic program over counts of caches per type, a type being a
    (served-user set, remaining capacity) pair. At most one cache of a type
    receives any given content; reachable count vectors are kept sparse."""
    prep = _prepare(instance)
    t0 = time.perf_counter()
    inst = prep.instance
    C = len(prep.caps)
    U = len(prep.user_ids)
    S = len(prep.sizes)
    K = max(prep.caps, default=0)
    user_index = {u: i for i, u in enumerate(prep.user_ids)}

    nb_mask = {}  # cache id -> user bitmask
    for c in prep.cache_ids:
        nb_mask[c] = 0
    for c, u in inst.edges:
        nb_mask[c] |= 1 << user_index[u]
    hoods = sorted({nb_mask[c] for c in prep.cache_ids})
    R = len(hoods)
    hood_index = {h: r for r, h in enumerate(hoods)}
    T = R * (K + 1)
    if T > 64:
        raise TooLarge(f"cache-type DP refused: {T} cache types")

    def type_of(r: int, y: int) -> int:
        return r * (K + 1) + y

    init = [0] * T
    for c in prep.cache_ids:
        init[type_of(hood_index[nb_mask[c]], inst.caches[c])] += 1
    init_state = tuple(init)

    gains_content = [
        [prep.gains_user[u][i] for u in range(U)] for i in range(S)
    ]

    table = {init_state: 0}
    seen = {init_state}
    back = []  # per stage: state -> (prev_state, chosen type tuple)
    for i in range(S):
        size = prep.sizes[i]
        gi = gains_content[i]
        new = dict(table)
        backi = {}
        for state in sorted(table):
            val = table[state]
            eligible = [
                t for t in range(T) if state[t] > 0 and t % (K + 1) >= size
            ]
            ne = len(eligible)
            for m in range(1, 1 << ne):
                counts = list(state)
                umask = 0
                for b in range(ne):
                    if m >> b & 1:
                        t = eligible[b]
                        counts[t] -= 1
                        counts[t - size] += 1  # same hood, capacity y - size
                        umask |= hoods[t // (K + 1)]
                gain = 0
                mm = umask
                while mm:
                    u = (mm & -mm).bit_length() - 1
                    gain += gi[u]
                    mm &= mm - 1
                ns = tuple(counts)
                nv = val + gain
                cur = new.get(ns)
                if cur is None or nv > cur:
                    new[ns] = nv
                    chosen = tuple(
                        eligible[b] for b in range(ne) if m >> b & 1
                    )
                    backi[ns] = (state, chosen)
        table = new
        seen.update(new)
        if len(seen) > state_guard:
            raise TooLarge(
                f"cache-type DP refused: more than {state_guard} states"
            )
        back.append(backi)

    best = -1
    best_state = init_state
    for state in sorted(table):
        v = table[state]
        if v > best:
            best = v
            best_state = state

    # Walk back to type-level decisions, then assign concrete cache ids,
    # lowest id first within a type.
    stage_choices: list[tuple[int, ...]] = [()] * S
    state = best_state
    for i in range(S - 1, -1, -1):
        bp = back[i].get(state)
        if bp is not None:
            state, stage_choices[i] = bp
    cache_state = {c: (hood_index[nb_mask[c]], inst.caches[c]) for c in prep.cache_ids}
    store: dict[str, set[str]] = {c: set() for c in prep.cache_ids}
    for i in range(S):
        size = prep.sizes[i]
        for t in stage_choices[i]:
            r, y = divmod(t, K + 1)
            cand = min(c for c, st in cache_state.items() if st == (r, y))
            store[cand].add(prep.content_ids[i])
            cache_state[cand] = (r, y - size)

    return SolveResult(
        optimum=Fraction(best, prep.denom),
        witness=Allocation({c: frozenset(s) for c, s in store.items()}),
        stats=SolveStats("typedp", len(seen), time.perf_counter() - t0),
    )


def dedup_same_neighborhood_caches(
    instance: Instance,
) -> tuple[Instance, dict[str, str]]:
    """For each group of caches serving the same user set, keep only the S
    largest-capacity ones (ties by id). Preserves the optimum exactly; a
    witness of the result is a witness of the input (deleted caches stay
    empty)."""
    inst = validate(instance)
    S = len(inst.contents)
    groups: dict[frozenset[str], list[str]] = {}
    for c in inst.cache_ids():
        groups.setdefault(frozenset(inst.cache_neighbors(c)), []).append(c)
    kept: set[str] = set()
    for members in groups.values():
        members.sort(key=lambda c: (-inst.caches[c], c))
        kept.update(members[:S])
    caches = {c: cap for c, cap in inst.caches.items() if c in kept}
    edges = frozenset((c, u) for c, u in inst.edges if c in kept)
    reduced = Instance(inst.contents, caches, inst.users, edges)
    return reduced, {c: c for c in sorted(kept)}


def _require_unit_sizes(instance: Instance) -> None:
    if any(size != 1 for size in instance.contents.values()):
        raise NotHomogeneous("operation requires unit content sizes")


def rescale_homogeneous(instance: Instance) -> Instance:
    """Turn an all-equal-sizes instance into the unit-size equivalent:
    sizes become 1, capacities become floor(kappa / size). Caches that can
    no longer store anything are dropped. Feasible allocations (and the
    optimum) are unchanged."""
    sizes = set(instance.contents.values())
    if len(sizes) > 1:
        raise NotHomogeneous(f"content sizes differ: {sorted(sizes)}")
    base = sizes.pop() if sizes else 1
    if base == 1:
        return instance
    caches = {c: cap // base for c, cap in instance.caches.items() if cap // base >= 1}
    contents = {s: 1 for s in instance.contents}
    edges = frozenset((c, u) for c, u in instance.edges if c in caches)
    return Instance(contents, caches, instance.users, edges)


def amalgamate_caches_homnc(
    instance: Instance,
) -> tuple[Instance, dict[str, str]]:
    """Merge each same-neighborhood cache group into one cache holding the
    summed capacity (valid only for unit sizes). The returned map sends
    every original cache to its surviving representative."""
    inst = validate(instance)
    _require_unit_sizes(inst)
    groups: dict[frozenset[str], list[str]] = {}
    for c in inst.cache_ids():
        groups.setdefault(frozenset(inst.cache_neighbors(c)), []).append(c)
    caches = {}
    mapping = {}
    for members in groups.values():
        rep = min(members)
        caches[rep] = sum(inst.caches[c] for c in members)
        for c in members:
            mapping[c] = rep
    edges = frozenset((mapping[c], u) for c, u in inst.edges)
    merged = validate(Instance(inst.contents, caches, inst.users, edges))
    return merged, mapping


def lift_amalgamated_witness(
    original: Instance, mapping: dict[str, str], witness: Allocation
) -> Allocation:
    """Distribute each merged cache's contents across its original group,
    greedily by cache id, respecting the original unit-size capacities."""
    members_of: dict[str, list[str]] = {}
    for c, rep in mapping.items():
        members_of.setdefault(rep, []).append(c)
    store: dict[str, frozenset[str]] = {}
    for rep, contents in witness.store.items():
        items = sorted(contents)
        for c in sorted(members_of.get(rep, [rep])):
            take = min(original.caches[c], len(items))
            if take:
                store[c] = frozenset(items[:take])
                items = items[take:]
    return Allocation(store)


def solve_homnc_by_users(
    instance: Instance, state_guard: int = DEFAULT_STATE_GUARD
) -> SolveResult:
    """Amalgamate same-neighborhood caches, run the capacity-vector DP, and
    lift the witness back to the original caches."""
    inst = validate(instance)
    unit = rescale_homogeneous(inst)
    merged, mapping = amalgamate_caches_homnc(unit)
    result = capacity_vector_dp(merged, state_guard=state_guard)
    witness = lift_amalgamated_witness(unit, mapping, result.witness)
    return SolveResult(
        optimum=result.optimum,
        witness=witness,
        stats=SolveStats(
            "homnc-u", result.stats.states_explored, result.stats.elapsed
        ),
    )


SOLVERS = {
    "brute": brute_force,
    "capdp": capacity_vector_dp,
    "typedp": cache_type_dp,
    "homnc-u": solve_homnc_by_users,
}


def solve(instance: Instance, algo: str = "auto", **kwargs) -> SolveResult:
    if algo == "auto":
        return auto_solve(instance, **kwargs)
    try:
        solver = SOLVERS[algo]
    except KeyError:
        raise InvalidCase(f"unknown algorithm {algo!r}") from None
    return solver(instance, **kwargs)


def decide(
    instance: Instance, ell: Fraction, algo: str = "auto"
) -> tuple[bool, Allocation | None]:
    """True with a witness iff the optimum reaches the threshold (exact)."""
    result = solve(instance, algo)
    if result.optimum >= ell:
        return True, result.witness
    return False, None


def _capped_pow(base: int, exp: int) -> int:
    # Bounds only drive budget comparisons; never build integers with
    # millions of digits when the true bound is astronomical anyway.
    if exp * max(base.bit_length() - 1, 1) > 4096:
        return 1 << 4096
    return base**exp


def algorithm_bounds(instance: Instance) -> dict[str, int]:
    """A-priori state/branch bounds driving the portfolio selection."""
    inst = validate(instance)
    prof = parameter_profile(inst)
    C, S, K = prof.num_caches, prof.num_contents, prof.max_capacity
    bounds = {
        "brute": _capped_pow(2, S * C),
        "capdp": _capped_pow(K + 1, C) * _capped_pow(2, C),
    }
    hoods = {frozenset(inst.cache_neighbors(c)) for c in inst.caches}
    T = len(hoods) * (K + 1)
    bounds["typedp"] = _capped_pow(C + 1, T) * _capped_pow(2, T)
    if prof.homogeneous and S > 0 and C > 0:
        merged, _ = amalgamate_caches_homnc(rescale_homogeneous(inst))
        C2 = len(merged.caches)
        K2 = max(merged.caches.values(), default=0)
        bounds["homnc-u"] = _capped_pow(K2 + 1, C2) * _capped_pow(2, C2)
    return bounds


# Selection preference among equal bounds. The capacity DP wins ties.
_AUTO_ORDER = ("capdp", "typedp", "homnc-u", "brute")


def auto_solve(instance: Instance, budget: int = DEFAULT_STATE_GUARD) -> SolveResult:
    """Run the algorithm with the smallest a-priori bound under the budget."""
    inst = validate(instance)
    bounds = algorithm_bounds(inst)
    choice = None
    for name in _AUTO_ORDER:
        b = bounds.get(name)
        if b is None or b > budget:
            continue
        if choice is None or b < bounds[choice]:
            choice = name
    if choice is None:
        raise NoFeasibleAlgorithm(
            f"every algorithm bound exceeds the budget {budget}"
        )
    if choice == "brute":
        prof = parameter_profile(inst)
        result = brute_force(inst, limit=prof.num_contents * prof.num_caches)
    else:
        result = SOLVERS[choice](inst, state_guard=budget)
    return SolveResult(
        optimum=result.optimum,
        witness=result.witness,
        stats=SolveStats(choice, result.stats.states_explored, result.stats.elapsed),
    )
