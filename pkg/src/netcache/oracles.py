"""Brute-force oracles for the source problems of the reductions.

These are deliberately independent of the caching solvers: plain
enumeration with hard size guards, used to verify every construction
end to end at desk scale.
"""

from __future__ import annotations

from itertools import combinations

from .errors import TooLarge
from .problems import (
    BinPackingInstance,
    CnfFormula,
    KnapsackInstance,
    MaxKVcInstance,
)

ORACLE_GUARD = 24


def _clause_values(clause, assignment) -> list[bool]:
    return [assignment[var] == positive for var, positive in clause]


def nae_oracle(formula: CnfFormula) -> bool:
    """True iff some assignment leaves no clause with all-equal values."""
    n = formula.num_vars
    if n > ORACLE_GUARD:
        raise TooLarge(f"{n} variables exceed the oracle guard {ORACLE_GUARD}")
    for bits in range(1 << n):
        assignment = {v + 1: bool(bits >> v & 1) for v in range(n)}
        if all(
            any(vals) and not all(vals)
            for vals in (_clause_values(cl, assignment) for cl in formula.clauses)
        ):
            return True
    return not formula.clauses


def sat_oracle(formula: CnfFormula) -> bool:
    """Plain satisfiability by exhaustive assignment enumeration."""
    n = formula.num_vars
    if n > ORACLE_GUARD:
        raise TooLarge(f"{n} variables exceed the oracle guard {ORACLE_GUARD}")
    for bits in range(1 << n):
        assignment = {v + 1: bool(bits >> v & 1) for v in range(n)}
        if all(any(_clause_values(cl, assignment)) for cl in formula.clauses):
            return True
    return not formula.clauses


def binpack_oracle(inst: BinPackingInstance) -> bool:
    """True iff the items admit a partition into b bins of capacity B."""
    if len(inst.items) > ORACLE_GUARD:
        raise TooLarge(f"{len(inst.items)} items exceed the guard {ORACLE_GUARD}")
    if sum(inst.items) > inst.bins * inst.capacity:
        return False
    items = sorted(inst.items, reverse=True)
    remaining = [inst.capacity] * inst.bins

    def place(i: int) -> bool:
        if i == len(items):
            return True
        tried = set()
        for b in range(inst.bins):
            if remaining[b] >= items[i] and remaining[b] not in tried:
                tried.add(remaining[b])  # symmetric bins: try one per load
                remaining[b] -= items[i]
                if place(i + 1):
                    remaining[b] += items[i]
                    return True
                remaining[b] += items[i]
        return False

    return place(0)


def knapsack_oracle(inst: KnapsackInstance) -> int:
    """Maximum achievable value over all weight-feasible item subsets."""
    n = len(inst.items)
    if n > ORACLE_GUARD:
        raise TooLarge(f"{n} items exceed the oracle guard {ORACLE_GUARD}")
    best = 0
    for bits in range(1 << n):
        weight = value = 0
        for i in range(n):
            if bits >> i & 1:
                w, v = inst.items[i]
                weight += w
                value += v
        if weight <= inst.capacity and value > best:
            best = value
    return best


def max_kvc_oracle(inst: MaxKVcInstance) -> int:
    """Maximum number of edges coverable by at most k vertices."""
    vertices = sorted(inst.adjacency)
    if len(vertices) > ORACLE_GUARD:
        raise TooLarge(f"{len(vertices)} vertices exceed the guard {ORACLE_GUARD}")
    edges = inst.edge_list()
    best = 0
    for size in range(min(inst.k, len(vertices)) + 1):
        for chosen in combinations(vertices, size):
            picked = set(chosen)
            covered = sum(1 for x, y in edges if x in picked or y in picked)
            if covered > best:
                best = covered
    return best
