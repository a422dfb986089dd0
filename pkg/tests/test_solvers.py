import random
from fractions import Fraction

import pytest

from netcache import (
    Allocation,
    Instance,
    NoFeasibleAlgorithm,
    NotHomogeneous,
    TooLarge,
    User,
    amalgamate_caches_homnc,
    auto_solve,
    brute_force,
    cache_hit_rate,
    cache_type_dp,
    capacity_vector_dp,
    decide,
    dedup_same_neighborhood_caches,
    is_feasible,
    lift_amalgamated_witness,
    rescale_homogeneous,
    solve,
    solve_homnc_by_users,
)
from netcache import generate
from netcache.solvers import algorithm_bounds

ALL_SOLVERS = [brute_force, capacity_vector_dp, cache_type_dp]


@pytest.mark.parametrize("solver", ALL_SOLVERS + [solve_homnc_by_users])
def test_ex1_optimum(solver, ex1):
    r = solver(ex1)
    assert r.optimum == Fraction(3, 5)
    assert r.witness == Allocation({"c1": frozenset({"s1"})})


@pytest.mark.parametrize("solver", ALL_SOLVERS)
def test_ex2_optimum(solver, ex2):
    r = solver(ex2)
    assert r.optimum == 1
    assert r.witness == Allocation(
        {"c1": frozenset({"s1"}), "c2": frozenset({"s2"})}
    )


@pytest.mark.parametrize("solver", ALL_SOLVERS + [solve_homnc_by_users])
def test_ex3_weight_dominance(solver, ex3):
    r = solver(ex3)
    assert r.optimum == 2
    assert r.witness == Allocation({"c1": frozenset({"s2"})})


@pytest.mark.parametrize("solver", ALL_SOLVERS + [solve_homnc_by_users])
def test_triangle_nae_optimum(solver, triangle_instance):
    assert solver(triangle_instance).optimum == Fraction(5, 2)


def test_witness_is_feasible_and_reevaluates(ex2, triangle_instance):
    for inst in (ex2, triangle_instance):
        for solver in ALL_SOLVERS:
            r = solver(inst)
            assert is_feasible(inst, r.witness)
            assert cache_hit_rate(inst, r.witness) == r.optimum


def test_brute_force_guard(triangle_instance):
    with pytest.raises(TooLarge):
        brute_force(triangle_instance, limit=5)


def test_capdp_state_guard(ex2):
    with pytest.raises(TooLarge):
        capacity_vector_dp(ex2, state_guard=2)


def test_typedp_state_guard(ex2):
    with pytest.raises(TooLarge):
        cache_type_dp(ex2, state_guard=1)


def test_capdp_state_count_bounded():
    for seed in range(30):
        rng = random.Random(seed)
        inst = generate.random_instance(rng)
        bound = 1
        for cap in inst.caches.values():
            bound *= min(cap, inst.total_size()) + 1
        r = capacity_vector_dp(inst)
        assert r.stats.states_explored <= bound


def test_determinism(ex2):
    for solver in ALL_SOLVERS:
        a, b = solver(ex2), solver(ex2)
        assert a.optimum == b.optimum
        assert a.witness == b.witness


def test_dedup_keeps_s_largest():
    inst = Instance(
        {"s1": 1, "s2": 1},
        {"c1": 5, "c2": 3, "c3": 2},
        {"u1": User(Fraction(1), {"s1": Fraction(1, 2), "s2": Fraction(1, 2)})},
        frozenset({("c1", "u1"), ("c2", "u1"), ("c3", "u1")}),
    )
    reduced, mapping = dedup_same_neighborhood_caches(inst)
    assert set(reduced.caches) == {"c1", "c2"}
    assert mapping == {"c1": "c1", "c2": "c2"}


def test_dedup_noop_on_distinct_neighborhoods(ex3):
    reduced, _ = dedup_same_neighborhood_caches(ex3)
    assert reduced == validate_like(ex3)


def validate_like(inst):
    from netcache import validate

    return validate(inst)


def test_dedup_preserves_optimum_randomized():
    for seed in range(60):
        rng = random.Random(f"dedup-{seed}")
        inst = generate.random_instance(rng)
        reduced, _ = dedup_same_neighborhood_caches(inst)
        assert brute_force(inst).optimum == brute_force(reduced).optimum


def test_amalgamate_sums_capacities():
    inst = Instance(
        {"s1": 1, "s2": 1, "s3": 1},
        {"c1": 1, "c2": 2},
        {"u1": User(Fraction(1), {"s1": Fraction(1)})},
        frozenset({("c1", "u1"), ("c2", "u1")}),
    )
    merged, mapping = amalgamate_caches_homnc(inst)
    assert merged.caches == {"c1": 3}
    assert mapping == {"c1": "c1", "c2": "c1"}


def test_amalgamate_rejects_mixed_sizes(ex2):
    with pytest.raises(NotHomogeneous):
        amalgamate_caches_homnc(ex2)


def test_amalgamate_witness_lift():
    inst = Instance(
        {"s1": 1, "s2": 1, "s3": 1},
        {"c1": 1, "c2": 1, "c3": 1, "c4": 1, "c5": 1, "c6": 1},
        {
            "u1": User(
                Fraction(1),
                {"s1": Fraction(1, 3), "s2": Fraction(1, 3), "s3": Fraction(1, 3)},
            )
        },
        frozenset({(f"c{i}", "u1") for i in range(1, 7)}),
    )
    r = solve_homnc_by_users(inst)
    assert r.optimum == 1  # six unit caches amalgamate to capacity 6 >= S
    assert is_feasible(inst, r.witness)
    assert cache_hit_rate(inst, r.witness) == 1


def test_rescale_homogeneous():
    inst = Instance(
        {"s1": 3, "s2": 3},
        {"c1": 7, "c2": 2},
        {"u1": User(Fraction(1), {"s1": Fraction(1, 2), "s2": Fraction(1, 2)})},
        frozenset({("c1", "u1"), ("c2", "u1")}),
    )
    unit = rescale_homogeneous(inst)
    assert unit.contents == {"s1": 1, "s2": 1}
    assert unit.caches == {"c1": 2}  # c2 can store nothing and is dropped
    assert brute_force(inst).optimum == brute_force(unit).optimum


def test_decide(ex1, ex2):
    yes, w = decide(ex1, Fraction(1, 2))
    assert yes and w == Allocation({"c1": frozenset({"s1"})})
    no, w = decide(ex1, Fraction(7, 10))
    assert not no and w is None
    yes, w = decide(ex2, Fraction(1))
    assert yes and w == Allocation({"c1": frozenset({"s1"}), "c2": frozenset({"s2"})})


def test_auto_solve_prefers_capdp_on_ex1(ex1):
    r = auto_solve(ex1)
    assert r.stats.algorithm == "capdp"
    assert r.optimum == Fraction(3, 5)


def test_auto_solve_takes_amalgamation_path():
    # Fifty duplicate unit caches on two users: only the homogeneous
    # composition has a small bound.
    users = {
        "u1": User(Fraction(1), {"s1": Fraction(1)}),
        "u2": User(Fraction(1), {"s2": Fraction(1)}),
    }
    caches = {f"c{i:02d}": 1 for i in range(1, 51)}
    edges = frozenset((c, u) for c in caches for u in users)
    inst = Instance({"s1": 1, "s2": 1}, caches, users, edges)
    bounds = algorithm_bounds(inst)
    assert bounds["homnc-u"] < bounds["capdp"]
    r = auto_solve(inst)
    assert r.stats.algorithm == "homnc-u"
    assert r.optimum == 2


def test_auto_solve_no_feasible_algorithm():
    contents = {f"s{i:02d}": 10**9 + i for i in range(1, 31)}
    users = {
        "u1": User(
            Fraction(1), {s: Fraction(1, 30) for s in contents}
        )
    }
    caches = {f"c{i:02d}": 10**9 for i in range(1, 11)}
    edges = frozenset((c, "u1") for c in caches)
    inst = Instance(contents, caches, users, edges)
    with pytest.raises(NoFeasibleAlgorithm):
        auto_solve(inst)


def test_solve_dispatch(ex1):
    assert solve(ex1, "brute").optimum == Fraction(3, 5)
    assert solve(ex1, "typedp").optimum == Fraction(3, 5)
    assert solve(ex1).stats.algorithm == "capdp"


def test_solver_agreement_randomized():
    for seed in range(120):
        rng = random.Random(f"agree-{seed}")
        inst = generate.random_instance(rng)
        reference = brute_force(inst).optimum
        assert capacity_vector_dp(inst).optimum == reference
        assert cache_type_dp(inst).optimum == reference
        if len(set(inst.contents.values())) == 1:
            assert solve_homnc_by_users(inst).optimum == reference
