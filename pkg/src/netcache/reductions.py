"""Hard-instance constructions from source problems, with witness back-maps,
plus the five optimum-preserving interreductions for unit-size instances.

Generated ids mirror the construction gadgets (``c_x1`` for the cache of
variable x1, ``u_C2`` for the user of clause 2, ...) to keep instances
debuggable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import InvalidCase, NotHomogeneous
from .model import Allocation, Instance, User, maximal_matching, validate
from .problems import (
    BinPackingInstance,
    CnfFormula,
    KnapsackInstance,
    MaxKVcInstance,
    check_monotone_nae_b3,
    check_planar_e3,
)
from .solvers import rescale_homogeneous

TRUE_CONTENT = "True"
FALSE_CONTENT = "False"


@dataclass(frozen=True)
class ReductionOutput:
    """A constructed caching instance, its decision threshold, and a map
    translating caching witnesses back to source-problem witnesses."""

    instance: Instance
    threshold: Fraction
    back_map: Callable[[Allocation], object]


def from_monotone_nae3sat(formula: CnfFormula) -> ReductionOutput:
    """One unit cache per variable, contents {True, False}, one user per
    clause requesting both with probability 1/2; threshold = #clauses."""
    check_monotone_nae_b3(formula)
    contents = {TRUE_CONTENT: 1, FALSE_CONTENT: 1}
    caches = {f"c_x{v}": 1 for v in range(1, formula.num_vars + 1)}
    users = {}
    edges = set()
    half = Fraction(1, 2)
    for j, clause in enumerate(formula.clauses, start=1):
        uid = f"u_C{j}"
        users[uid] = User(Fraction(1), {TRUE_CONTENT: half, FALSE_CONTENT: half})
        for v, _ in clause:
            edges.add((f"c_x{v}", uid))
    instance = validate(Instance(contents, caches, users, frozenset(edges)))

    def back_map(witness: Allocation) -> dict[int, bool]:
        assignment = {}
        for v in range(1, formula.num_vars + 1):
            stored = witness.get(f"c_x{v}")
            assignment[v] = TRUE_CONTENT in stored
        return assignment

    return ReductionOutput(instance, Fraction(len(formula.clauses)), back_map)


def from_unary_bin_packing(
    inst: BinPackingInstance, split_users: bool
) -> ReductionOutput:
    """b caches of capacity B, one content per item. Either one user
    requesting every item uniformly (threshold 1) or one unit-probability
    user per item adjacent to every cache (threshold |I|)."""
    n = len(inst.items)
    contents = {f"item{i}": size for i, size in enumerate(inst.items, start=1)}
    caches = {f"bin{b}": inst.capacity for b in range(1, inst.bins + 1)}
    edges = set()
    users: dict[str, User] = {}
    if split_users:
        for i in range(1, n + 1):
            uid = f"u_item{i}"
            users[uid] = User(Fraction(1), {f"item{i}": Fraction(1)})
            edges.update((c, uid) for c in caches)
        threshold = Fraction(n)
    else:
        users["u"] = User(
            Fraction(1), {f"item{i}": Fraction(1, n) for i in range(1, n + 1)}
        )
        edges.update((c, "u") for c in caches)
        threshold = Fraction(1)
    instance = validate(Instance(contents, caches, users, frozenset(edges)))

    def back_map(witness: Allocation) -> dict[int, int]:
        placement = {}
        for b in range(1, inst.bins + 1):
            for s in witness.get(f"bin{b}"):
                i = int(s.removeprefix("item")) - 1
                if i not in placement:  # first (lowest) bin wins duplicates
                    placement[i] = b - 1
        return placement

    return ReductionOutput(instance, threshold, back_map)


def from_knapsack(inst: KnapsackInstance, split_users: bool) -> ReductionOutput:
    """A single cache of the knapsack's capacity; one content per item with
    the item's weight as size; request probabilities (or user weights, in
    the split variant) proportional to the values; threshold t / sum(v)."""
    total_value = sum(v for _, v in inst.items)
    contents = {f"item{i}": w for i, (w, _) in enumerate(inst.items, start=1)}
    caches = {"knapsack": inst.capacity}
    users: dict[str, User] = {}
    edges = set()
    if split_users:
        for i, (_, v) in enumerate(inst.items, start=1):
            uid = f"u_item{i}"
            users[uid] = User(Fraction(v, total_value), {f"item{i}": Fraction(1)})
            edges.add(("knapsack", uid))
    else:
        users["u"] = User(
            Fraction(1),
            {
                f"item{i}": Fraction(v, total_value)
                for i, (_, v) in enumerate(inst.items, start=1)
            },
        )
        edges.add(("knapsack", "u"))
    instance = validate(Instance(contents, caches, users, frozenset(edges)))

    def back_map(witness: Allocation) -> set[int]:
        return {int(s.removeprefix("item")) - 1 for s in witness.get("knapsack")}

    return ReductionOutput(instance, Fraction(inst.target, total_value), back_map)


def from_max_k_vertex_cover(inst: MaxKVcInstance) -> ReductionOutput:
    """One content per vertex; per edge xy a weight-1 user requesting x and
    y at 1/2 plus a private unit cache; a central cache of capacity k serving
    every user. Threshold (U + t)/2. The network is a once-subdivided star."""
    contents = {f"v{v}": 1 for v in inst.adjacency}
    edges_src = inst.edge_list()
    caches = {"c": inst.k}
    users: dict[str, User] = {}
    edges = set()
    half = Fraction(1, 2)
    for x, y in edges_src:
        uid = f"u_{x}_{y}"
        users[uid] = User(Fraction(1), {f"v{x}": half, f"v{y}": half})
        caches[f"c_{x}_{y}"] = 1
        edges.add((f"c_{x}_{y}", uid))
        edges.add(("c", uid))
    instance = validate(Instance(contents, caches, users, frozenset(edges)))

    def back_map(witness: Allocation) -> set[int]:
        return {int(s.removeprefix("v")) for s in witness.get("c")}

    threshold = Fraction(len(edges_src) + inst.t, 2)
    return ReductionOutput(instance, threshold, back_map)


def from_planar_3sat_e3(formula: CnfFormula) -> ReductionOutput:
    """Per variable: contents x_i and its negation, two unit caches, and two
    unit-probability users pinning the pair; per clause: a user requesting
    its literals uniformly plus one or two private unit caches; threshold =
    total user count. Planarity of the input is not validated."""
    check_planar_e3(formula)
    contents: dict[str, int] = {}
    caches: dict[str, int] = {}
    users: dict[str, User] = {}
    edges = set()

    def lit_content(v: int, positive: bool) -> str:
        return f"x{v}" if positive else f"nx{v}"

    for v in range(1, formula.num_vars + 1):
        contents[f"x{v}"] = 1
        contents[f"nx{v}"] = 1
        caches[f"c_x{v}"] = 1
        caches[f"cp_x{v}"] = 1
        users[f"u_x{v}"] = User(Fraction(1), {f"x{v}": Fraction(1)})
        users[f"u_nx{v}"] = User(Fraction(1), {f"nx{v}": Fraction(1)})
        for cache in (f"c_x{v}", f"cp_x{v}"):
            edges.add((cache, f"u_x{v}"))
            edges.add((cache, f"u_nx{v}"))

    for j, clause in enumerate(formula.clauses, start=1):
        uid = f"u_C{j}"
        p = Fraction(1, len(clause))
        users[uid] = User(Fraction(1), {lit_content(v, pos): p for v, pos in clause})
        for v, _ in clause:
            edges.add((f"c_x{v}", uid))
        edges.add((f"c_u_C{j}", uid))
        caches[f"c_u_C{j}"] = 1
        if len(clause) == 3:
            caches[f"cp_u_C{j}"] = 1
            edges.add((f"cp_u_C{j}", uid))

    instance = validate(Instance(contents, caches, users, frozenset(edges)))

    def back_map(witness: Allocation) -> dict[int, bool]:
        assignment = {}
        for v in range(1, formula.num_vars + 1):
            stored = witness.get(f"c_x{v}")
            if f"nx{v}" in stored:
                assignment[v] = False
            else:
                assignment[v] = True
        return assignment

    return ReductionOutput(instance, Fraction(len(users)), back_map)


def _merge_user_group(instance: Instance, group: list[str]) -> User:
    """Case-2 merge: summed weight, hit-rate-preserving mixed distribution."""
    weight = sum((instance.users[u].weight for u in group), Fraction(0))
    mixed: dict[str, Fraction] = {}
    for u in group:
        usr = instance.users[u]
        for s, p in usr.requests.items():
            if p:
                mixed[s] = mixed.get(s, Fraction(0)) + usr.weight * p
    return User(weight, {s: q / weight for s, q in mixed.items()})


def _merge_same_neighborhood_users(
    instance: Instance, eligible: set[str]
) -> Instance:
    groups: dict[frozenset[str], list[str]] = {}
    for u in sorted(eligible):
        groups.setdefault(frozenset(instance.user_neighbors(u)), []).append(u)
    users = dict(instance.users)
    removed: set[str] = set()
    for group in groups.values():
        if len(group) < 2:
            continue
        rep = min(group)
        users[rep] = _merge_user_group(instance, group)
        for u in group:
            if u != rep:
                removed.add(u)
                del users[u]
    edges = frozenset((c, u) for c, u in instance.edges if u not in removed)
    return Instance(instance.contents, instance.caches, users, edges)


def _merge_same_neighborhood_caches(
    instance: Instance, eligible: set[str]
) -> Instance:
    groups: dict[frozenset[str], list[str]] = {}
    for c in sorted(eligible):
        groups.setdefault(frozenset(instance.cache_neighbors(c)), []).append(c)
    caches = dict(instance.caches)
    removed: set[str] = set()
    for group in groups.values():
        if len(group) < 2:
            continue
        rep = min(group)
        caches[rep] = sum(instance.caches[c] for c in group)
        for c in group:
            if c != rep:
                removed.add(c)
                del caches[c]
    edges = frozenset((c, u) for c, u in instance.edges if c not in removed)
    return Instance(instance.contents, caches, instance.users, edges)


def interreduce(instance: Instance, case: int) -> Instance:
    """The five optimum-preserving transformations between parameterizations
    of the unit-size problem:

    1. amalgamate same-neighborhood caches (C <= 2^U afterwards);
    2. merge same-neighborhood users (U <= 2^C afterwards);
    3. split each cache into unit-capacity copies (K = 1 afterwards);
    4. split each user per requested content (lambda = 1 afterwards);
    5. compute a 2-approximate vertex cover X and merge duplicate users and
       caches outside it (C + U <= 2^|X| + |X| afterwards).

    All-equal non-unit sizes are first rescaled to unit sizes.
    """
    inst = rescale_homogeneous(validate(instance))
    if case == 1:
        return validate(_merge_same_neighborhood_caches(inst, set(inst.caches)))
    if case == 2:
        return validate(_merge_same_neighborhood_users(inst, set(inst.users)))
    if case == 3:
        caches = {}
        edges = set()
        for c in inst.cache_ids():
            hood = inst.cache_neighbors(c)
            for r in range(1, inst.caches[c] + 1):
                cid = f"{c}#{r}"
                caches[cid] = 1
                edges.update((cid, u) for u in hood)
        return validate(Instance(inst.contents, caches, inst.users, frozenset(edges)))
    if case == 4:
        users = {}
        edges = set()
        for u in inst.user_ids():
            usr = inst.users[u]
            hood = inst.user_neighbors(u)
            for s in usr.support():
                uid = f"{u}@{s}"
                users[uid] = User(usr.weight * usr.requests[s], {s: Fraction(1)})
                edges.update((c, uid) for c in hood)
        return validate(Instance(inst.contents, inst.caches, users, frozenset(edges)))
    if case == 5:
        cover_caches: set[str] = set()
        cover_users: set[str] = set()
        for c, u in maximal_matching(inst):
            cover_caches.add(c)
            cover_users.add(u)
        reduced = _merge_same_neighborhood_users(
            inst, set(inst.users) - cover_users
        )
        return validate(
            _merge_same_neighborhood_caches(
                reduced, set(reduced.caches) - cover_caches
            )
        )
    raise InvalidCase(f"case must be 1..5, got {case}")
