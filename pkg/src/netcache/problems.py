"""Source-problem instance types used by the reduction constructions."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidFormula, InvalidInstance

# A literal is (variable index >= 1, polarity); a clause is a tuple of literals.
Literal = tuple[int, bool]
Clause = tuple[Literal, ...]


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "clauses",
            tuple(tuple((int(v), bool(pos)) for v, pos in cl) for cl in self.clauses),
        )
        for cl in self.clauses:
            for v, _ in cl:
                if not 1 <= v <= self.num_vars:
                    raise InvalidFormula(f"variable {v} out of range 1..{self.num_vars}")

    def occurrences(self) -> dict[int, int]:
        counts = {v: 0 for v in range(1, self.num_vars + 1)}
        for cl in self.clauses:
            for v, _ in cl:
                counts[v] += 1
        return counts


def check_monotone_nae_b3(formula: CnfFormula) -> None:
    """Clauses of 2 or 3 positive literals; each variable in at most 3."""
    for cl in formula.clauses:
        if len(cl) not in (2, 3):
            raise InvalidFormula(f"clause {cl} has {len(cl)} literals, want 2 or 3")
        if any(not pos for _, pos in cl):
            raise InvalidFormula(f"clause {cl} contains a negative literal")
        if len({v for v, _ in cl}) != len(cl):
            raise InvalidFormula(f"clause {cl} repeats a variable")
    for v, n in formula.occurrences().items():
        if n > 3:
            raise InvalidFormula(f"variable {v} occurs {n} times, at most 3 allowed")


def check_planar_e3(formula: CnfFormula) -> None:
    """Clauses of 2 or 3 literals; each variable in exactly 3 clauses.

    Planarity of the incidence graph is deliberately not checked.
    """
    for cl in formula.clauses:
        if len(cl) not in (2, 3):
            raise InvalidFormula(f"clause {cl} has {len(cl)} literals, want 2 or 3")
        if len({v for v, _ in cl}) != len(cl):
            raise InvalidFormula(f"clause {cl} repeats a variable")
    for v, n in formula.occurrences().items():
        if n != 3:
            raise InvalidFormula(f"variable {v} occurs {n} times, exactly 3 required")


@dataclass(frozen=True)
class BinPackingInstance:
    items: tuple[int, ...]
    bins: int
    capacity: int

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(int(x) for x in self.items))
        if not self.items:
            raise InvalidInstance("no items")
        if any(x < 1 for x in self.items):
            raise InvalidInstance("item sizes must be positive")
        if self.bins < 1 or self.capacity < 1:
            raise InvalidInstance("bins and capacity must be positive")


@dataclass(frozen=True)
class KnapsackInstance:
    capacity: int
    items: tuple[tuple[int, int], ...]  # (weight, value)
    target: int

    def __post_init__(self):
        object.__setattr__(
            self, "items", tuple((int(w), int(v)) for w, v in self.items)
        )
        if not self.items:
            raise InvalidInstance("no items")
        if any(w < 1 or v < 1 for w, v in self.items):
            raise InvalidInstance("weights and values must be positive")
        if self.capacity < 1 or self.target < 1:
            raise InvalidInstance("capacity and target must be positive")


@dataclass(frozen=True)
class MaxKVcInstance:
    adjacency: dict[int, frozenset[int]]
    k: int
    t: int

    def __post_init__(self):
        adj = {int(v): frozenset(int(w) for w in ws) for v, ws in self.adjacency.items()}
        object.__setattr__(self, "adjacency", adj)
        for v, ws in adj.items():
            if v in ws:
                raise InvalidInstance(f"self-loop at vertex {v}")
            for w in ws:
                if w not in adj or v not in adj[w]:
                    raise InvalidInstance(f"edge ({v}, {w}) is not symmetric")
        if not 1 <= self.k <= max(len(adj), 1):
            raise InvalidInstance(f"k = {self.k} out of range 1..{len(adj)}")
        if self.t < 0 or self.t > len(self.edge_list()):
            raise InvalidInstance(f"t = {self.t} exceeds the edge count")

    @classmethod
    def from_edges(cls, num_vertices: int, edges, k: int, t: int) -> "MaxKVcInstance":
        adj: dict[int, set[int]] = {v: set() for v in range(1, num_vertices + 1)}
        for x, y in edges:
            if x == y or x not in adj or y not in adj:
                raise InvalidInstance(f"bad edge ({x}, {y})")
            adj[x].add(y)
            adj[y].add(x)
        return cls({v: frozenset(ws) for v, ws in adj.items()}, k, t)

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(
            (v, w) for v, ws in self.adjacency.items() for w in ws if v < w
        )


# Witness verifiers used to close the back-map round trip in tests.

def nae_assignment_ok(formula: CnfFormula, assignment: dict[int, bool]) -> bool:
    for cl in formula.clauses:
        vals = [assignment[v] == pos for v, pos in cl]
        if all(vals) or not any(vals):
            return False
    return True


def sat_assignment_ok(formula: CnfFormula, assignment: dict[int, bool]) -> bool:
    return all(
        any(assignment[v] == pos for v, pos in cl) for cl in formula.clauses
    )


def packing_ok(inst: BinPackingInstance, bin_of: dict[int, int]) -> bool:
    """bin_of maps item index -> bin index; every item must be placed."""
    if set(bin_of) != set(range(len(inst.items))):
        return False
    loads = [0] * inst.bins
    for i, b in bin_of.items():
        if not 0 <= b < inst.bins:
            return False
        loads[b] += inst.items[i]
    return all(load <= inst.capacity for load in loads)


def knapsack_choice_ok(inst: KnapsackInstance, chosen: set[int]) -> bool:
    weight = sum(inst.items[i][0] for i in chosen)
    value = sum(inst.items[i][1] for i in chosen)
    return weight <= inst.capacity and value >= inst.target


def vertex_set_ok(inst: MaxKVcInstance, chosen: set[int]) -> bool:
    if len(chosen) > inst.k or not chosen <= set(inst.adjacency):
        return False
    covered = sum(1 for x, y in inst.edge_list() if x in chosen or y in chosen)
    return covered >= inst.t
