"""Seeded random generators for instances and source problems.

Probabilities are built by splitting a small denominator into positive
parts, so request distributions sum to exactly 1 with denominators no
larger than ``max_den``.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .model import Instance, User, validate
from .problems import BinPackingInstance, CnfFormula, KnapsackInstance, MaxKVcInstance


def _split_unit(rng: random.Random, parts: int, max_den: int) -> list[Fraction]:
    """A random probability vector of the given length with bounded
    denominator: a composition of some d <= max_den into positive parts."""
    den = rng.randint(parts, max_den)
    cuts = sorted(rng.sample(range(1, den), parts - 1)) if parts > 1 else []
    bounds = [0] + cuts + [den]
    return [Fraction(bounds[i + 1] - bounds[i], den) for i in range(parts)]


def random_instance(
    rng: random.Random,
    max_caches: int = 3,
    max_users: int = 4,
    max_contents: int = 5,
    max_size: int = 3,
    max_cap: int = 4,
    max_den: int = 12,
    homogeneous: bool = False,
) -> Instance:
    C = rng.randint(1, max_caches)
    U = rng.randint(1, max_users)
    S = rng.randint(1, max_contents)
    contents = {
        f"s{i}": 1 if homogeneous else rng.randint(1, max_size)
        for i in range(1, S + 1)
    }
    caches = {f"c{i}": rng.randint(1, max_cap) for i in range(1, C + 1)}
    users = {}
    for i in range(1, U + 1):
        support = rng.sample(sorted(contents), rng.randint(1, S))
        probs = _split_unit(rng, len(support), max(max_den, len(support)))
        weight = Fraction(rng.randint(1, 4), rng.randint(1, 3))
        users[f"u{i}"] = User(weight, dict(zip(support, probs)))
    edges = {
        (c, u) for c in caches for u in users if rng.random() < 0.6
    }
    return validate(Instance(contents, caches, users, frozenset(edges)))


def structured_homogeneous(C: int, K: int, S: int, U: int) -> Instance:
    """A deterministic homogeneous instance: C caches of capacity K, S unit
    contents split evenly across U users (uniform requests), user i wired to
    cache i mod C. Used by the benchmark generator spec."""
    contents = {f"s{i:04d}": 1 for i in range(1, S + 1)}
    caches = {f"c{i}": K for i in range(1, C + 1)}
    users = {}
    edges = set()
    content_ids = sorted(contents)
    per_user = max(1, S // U)
    for i in range(1, U + 1):
        lo = ((i - 1) * per_user) % S
        support = content_ids[lo : lo + per_user] or content_ids[:1]
        users[f"u{i:03d}"] = User(
            Fraction(1), {s: Fraction(1, len(support)) for s in support}
        )
        edges.add((f"c{(i - 1) % C + 1}", f"u{i:03d}"))
    return validate(Instance(contents, caches, users, frozenset(edges)))


def random_monotone_b3(
    rng: random.Random, max_vars: int = 4, max_clauses: int = 4
) -> CnfFormula:
    n = rng.randint(2, max_vars)
    budget = {v: 3 for v in range(1, n + 1)}
    clauses = []
    for _ in range(rng.randint(1, max_clauses)):
        size = rng.choice((2, 3))
        avail = [v for v, b in budget.items() if b > 0]
        if len(avail) < size:
            break
        chosen = rng.sample(avail, size)
        for v in chosen:
            budget[v] -= 1
        clauses.append(tuple((v, True) for v in sorted(chosen)))
    if not clauses:
        clauses.append(((1, True), (2, True)))
        # the two occurrences are within budget by construction
    return CnfFormula(n, tuple(clauses))


def random_e3_formula(rng: random.Random, max_vars: int = 5) -> CnfFormula:
    """A 2/3-CNF where every variable occurs exactly 3 times. Built by
    shuffling the 3n occurrence slots into clauses; retried until no clause
    repeats a variable."""
    n = rng.randint(2, max_vars)
    while True:
        slots = [v for v in range(1, n + 1) for _ in range(3)]
        rng.shuffle(slots)
        sizes = []
        remaining = 3 * n
        while remaining:
            if remaining == 2 or remaining == 4:
                size = 2
            elif remaining == 3:
                size = 3
            else:
                size = rng.choice((2, 3))
            sizes.append(size)
            remaining -= size
        clauses = []
        ok = True
        pos = 0
        for size in sizes:
            chunk = slots[pos : pos + size]
            pos += size
            if len(set(chunk)) != size:
                ok = False
                break
            clauses.append(
                tuple((v, rng.random() < 0.5) for v in sorted(chunk))
            )
        if ok:
            return CnfFormula(n, tuple(clauses))


def random_bin_packing(
    rng: random.Random, max_items: int = 8, max_capacity: int = 10
) -> BinPackingInstance:
    n = rng.randint(1, max_items)
    capacity = rng.randint(1, max_capacity)
    items = tuple(rng.randint(1, capacity) for _ in range(n))
    bins = rng.randint(1, n)
    return BinPackingInstance(items, bins, capacity)


def random_knapsack(
    rng: random.Random,
    max_items: int = 10,
    max_weight: int = 20,
    max_value: int = 50,
) -> KnapsackInstance:
    n = rng.randint(1, max_items)
    items = tuple(
        (rng.randint(1, max_weight), rng.randint(1, max_value)) for _ in range(n)
    )
    capacity = rng.randint(1, max(2, sum(w for w, _ in items)))
    target = rng.randint(1, sum(v for _, v in items))
    return KnapsackInstance(capacity, items, target)


def random_graph(
    rng: random.Random, max_vertices: int = 6, max_edges: int = 6
) -> MaxKVcInstance:
    n = rng.randint(2, max_vertices)
    possible = [(x, y) for x in range(1, n + 1) for y in range(x + 1, n + 1)]
    rng.shuffle(possible)
    m = rng.randint(1, min(max_edges, len(possible)))
    edges = possible[:m]
    k = rng.randint(1, min(3, n))
    t = rng.randint(0, m)
    return MaxKVcInstance.from_edges(n, edges, k, t)
