"""Problem data model: instances, allocations, objective, and parameters.

All quantities are exact: probabilities, weights, and hit rates are
``fractions.Fraction`` values, sizes and capacities are Python integers.
No floating point enters any computation in this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import BadDistribution, DanglingId, NonPositive, UnknownUser

# Instances whose total content size exceeds this are treated as
# binary-encoded (HetNC-B) rather than unary-encoded (HetNC-U).
DEFAULT_UNARY_BUDGET = 10**6


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class User:
    """A user with a priority weight and a request distribution."""

    weight: Fraction
    requests: dict[str, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "weight", _frac(self.weight))
        object.__setattr__(
            self, "requests", {s: _frac(p) for s, p in self.requests.items()}
        )

    def support(self) -> list[str]:
        """Content ids requested with positive probability, sorted."""
        return sorted(s for s, p in self.requests.items() if p > 0)


@dataclass(frozen=True)
class Instance:
    """A full Network-Caching input.

    ``edges`` holds (cache id, user id) pairs; the graph is bipartite by
    construction. Instances are immutable after construction and safe to
    share between threads.
    """

    contents: dict[str, int]
    caches: dict[str, int]
    users: dict[str, User]
    edges: frozenset[tuple[str, str]]

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(self.edges))

    # Deterministic (lexicographic) id orderings used everywhere.
    def content_ids(self) -> list[str]:
        return sorted(self.contents)

    def cache_ids(self) -> list[str]:
        return sorted(self.caches)

    def user_ids(self) -> list[str]:
        return sorted(self.users)

    def total_size(self) -> int:
        return sum(self.contents.values())

    def user_neighbors(self, u: str) -> set[str]:
        return {c for c, uu in self.edges if uu == u}

    def cache_neighbors(self, c: str) -> set[str]:
        return {u for cc, u in self.edges if cc == c}

    def total_weight(self) -> Fraction:
        return sum((usr.weight for usr in self.users.values()), Fraction(0))


@dataclass(frozen=True)
class Allocation:
    """A caching allocation: cache id -> set of stored content ids.

    Feasibility is deliberately not an invariant; see :func:`is_feasible`.
    Empty stores are dropped so equal allocations compare equal.
    """

    store: dict[str, frozenset[str]]

    def __post_init__(self):
        object.__setattr__(
            self,
            "store",
            {c: frozenset(s) for c, s in self.store.items() if s},
        )

    @classmethod
    def empty(cls) -> "Allocation":
        return cls({})

    def get(self, cache_id: str) -> frozenset[str]:
        return self.store.get(cache_id, frozenset())


@dataclass(frozen=True)
class ParameterProfile:
    """The parameter tuple extracted from an instance."""

    num_caches: int  # C
    num_users: int  # U
    num_contents: int  # S
    max_capacity: int  # K
    max_degree: int  # Delta
    max_request_support: int  # lambda
    total_size: int
    homogeneous: bool
    vc_upper: int  # size of a 2-approximate vertex cover


def validate(instance: Instance) -> Instance:
    """Check all instance invariants; return the normalized instance.

    Capacities above the total content size are clamped down to it
    (any such cache can store the whole catalog anyway), so the returned
    instance may differ from the input.
    """
    for s, size in instance.contents.items():
        if size <= 0:
            raise NonPositive(f"content {s!r} has size {size}")
    for c, cap in instance.caches.items():
        if cap <= 0:
            raise NonPositive(f"cache {c!r} has capacity {cap}")
    for u, usr in instance.users.items():
        if usr.weight <= 0:
            raise NonPositive(f"user {u!r} has weight {usr.weight}")
        total = Fraction(0)
        for s, p in usr.requests.items():
            if s not in instance.contents:
                raise DanglingId(f"user {u!r} requests unknown content {s!r}")
            if p < 0:
                raise BadDistribution(f"user {u!r}: p({s!r}) = {p} < 0")
            total += p
        if total != 1:
            raise BadDistribution(f"user {u!r}: probabilities sum to {total}")
    for c, u in instance.edges:
        if c not in instance.caches:
            raise DanglingId(f"edge ({c!r}, {u!r}) references unknown cache")
        if u not in instance.users:
            raise DanglingId(f"edge ({c!r}, {u!r}) references unknown user")

    total_size = instance.total_size()
    if any(cap > total_size for cap in instance.caches.values()):
        clamped = {c: min(cap, total_size) for c, cap in instance.caches.items()}
        return Instance(instance.contents, clamped, instance.users, instance.edges)
    return instance


def check_allocation(instance: Instance, alloc: Allocation) -> None:
    """Raise DanglingId if the allocation references unknown ids."""
    for c, stored in alloc.store.items():
        if c not in instance.caches:
            raise DanglingId(f"allocation references unknown cache {c!r}")
        for s in stored:
            if s not in instance.contents:
                raise DanglingId(f"allocation stores unknown content {s!r}")


def hit_set(instance: Instance, alloc: Allocation, user_id: str) -> frozenset[str]:
    """H(u): contents stored in at least one cache adjacent to the user."""
    if user_id not in instance.users:
        raise UnknownUser(f"unknown user {user_id!r}")
    check_allocation(instance, alloc)
    hits: set[str] = set()
    for c in instance.user_neighbors(user_id):
        hits |= alloc.get(c)
    return frozenset(hits)


def cache_hit_rate(instance: Instance, alloc: Allocation) -> Fraction:
    """CH(Z) = sum over users of w(u) * p(u, s) for every s in H(u)."""
    check_allocation(instance, alloc)
    total = Fraction(0)
    for u, usr in instance.users.items():
        hits: set[str] = set()
        for c in instance.user_neighbors(u):
            hits |= alloc.get(c)
        for s in hits:
            p = usr.requests.get(s)
            if p:
                total += usr.weight * p
    return total


def is_feasible(instance: Instance, alloc: Allocation) -> bool:
    """True iff every cache's stored sizes sum to at most its capacity."""
    check_allocation(instance, alloc)
    for c, cap in instance.caches.items():
        load = sum(instance.contents[s] for s in alloc.get(c))
        if load > cap:
            return False
    return True


def maximal_matching(instance: Instance) -> list[tuple[str, str]]:
    """Greedy maximal matching over edges in (cache id, user id) order."""
    matched_c: set[str] = set()
    matched_u: set[str] = set()
    matching = []
    for c, u in sorted(instance.edges):
        if c not in matched_c and u not in matched_u:
            matching.append((c, u))
            matched_c.add(c)
            matched_u.add(u)
    return matching


def vertex_cover_2approx(instance: Instance) -> set[str]:
    """Both endpoints of a greedy maximal matching; a vertex cover of G."""
    cover: set[str] = set()
    for c, u in maximal_matching(instance):
        cover.add(c)
        cover.add(u)
    return cover


def parameter_profile(instance: Instance) -> ParameterProfile:
    """Compute all parameters exactly; ids play no role (relabel-invariant)."""
    degrees: dict[str, int] = {}
    for c, u in instance.edges:
        degrees[("c", c)] = degrees.get(("c", c), 0) + 1
        degrees[("u", u)] = degrees.get(("u", u), 0) + 1
    sizes = set(instance.contents.values())
    return ParameterProfile(
        num_caches=len(instance.caches),
        num_users=len(instance.users),
        num_contents=len(instance.contents),
        max_capacity=max(instance.caches.values(), default=0),
        max_degree=max(degrees.values(), default=0),
        max_request_support=max(
            (len(usr.support()) for usr in instance.users.values()), default=0
        ),
        total_size=instance.total_size(),
        homogeneous=len(sizes) <= 1,
        vc_upper=2 * len(maximal_matching(instance)),
    )


def classify_variant(instance: Instance, unary_budget: int = DEFAULT_UNARY_BUDGET) -> str:
    """HomNC if all sizes are equal, HetNC-U while the total size is small
    enough to count as unary-encoded, HetNC-B otherwise."""
    if len(set(instance.contents.values())) <= 1:
        return "HomNC"
    if instance.total_size() <= unary_budget:
        return "HetNC-U"
    return "HetNC-B"
