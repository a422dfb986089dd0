import random
from fractions import Fraction

import pytest

from netcache import (
    BinPackingInstance,
    CnfFormula,
    InvalidCase,
    InvalidFormula,
    InvalidInstance,
    KnapsackInstance,
    MaxKVcInstance,
    NotHomogeneous,
    brute_force,
    capacity_vector_dp,
    from_knapsack,
    from_max_k_vertex_cover,
    from_monotone_nae3sat,
    from_planar_3sat_e3,
    from_unary_bin_packing,
    interreduce,
    parameter_profile,
)
from netcache import generate, oracles
from netcache.problems import (
    check_monotone_nae_b3,
    check_planar_e3,
    knapsack_choice_ok,
    nae_assignment_ok,
    packing_ok,
    sat_assignment_ok,
    vertex_set_ok,
)


def test_nae_construction_shape(triangle_formula):
    out = from_monotone_nae3sat(triangle_formula)
    inst = out.instance
    assert set(inst.contents) == {"True", "False"}
    assert set(inst.caches) == {"c_x1", "c_x2", "c_x3"}
    assert all(cap == 1 for cap in inst.caches.values())
    assert len(inst.users) == 3
    assert out.threshold == 3


def test_nae_triangle_is_a_no_instance(triangle_formula):
    out = from_monotone_nae3sat(triangle_formula)
    assert not oracles.nae_oracle(triangle_formula)
    assert brute_force(out.instance).optimum == Fraction(5, 2) < out.threshold


def test_nae_yes_instance_back_map():
    f = CnfFormula(2, (((1, True), (2, True)),))
    out = from_monotone_nae3sat(f)
    r = brute_force(out.instance)
    assert r.optimum >= out.threshold
    assignment = out.back_map(r.witness)
    assert nae_assignment_ok(f, assignment)


def test_nae_rejects_non_b3():
    f = CnfFormula(1, (((1, True), (1, True)),))
    with pytest.raises(InvalidFormula):
        from_monotone_nae3sat(f)
    clause = ((1, True), (2, True))
    with pytest.raises(InvalidFormula):
        from_monotone_nae3sat(CnfFormula(2, (clause,) * 4))


def test_binpack_construction_yes_and_no():
    yes = BinPackingInstance((4, 3, 3, 2, 2, 2), 2, 8)
    no = BinPackingInstance((5, 4, 3, 3), 2, 7)
    for split in (False, True):
        out_yes = from_unary_bin_packing(yes, split)
        out_no = from_unary_bin_packing(no, split)
        ry = capacity_vector_dp(out_yes.instance)
        rn = capacity_vector_dp(out_no.instance)
        assert ry.optimum >= out_yes.threshold
        assert rn.optimum < out_no.threshold
        placement = out_yes.back_map(ry.witness)
        assert packing_ok(yes, placement)
    assert capacity_vector_dp(from_unary_bin_packing(yes, False).instance).optimum == 1
    assert capacity_vector_dp(
        from_unary_bin_packing(no, False).instance
    ).optimum == Fraction(3, 4)


def test_knapsack_fixture_value():
    src = KnapsackInstance(10, ((6, 30), (3, 14), (4, 16), (2, 9)), 46)
    for split in (False, True):
        out = from_knapsack(src, split)
        r = capacity_vector_dp(out.instance)
        assert r.optimum == Fraction(46, 69)
        assert r.optimum >= out.threshold
        chosen = out.back_map(r.witness)
        assert knapsack_choice_ok(src, chosen)
        assert chosen == {0, 2}


def test_max_kvc_k3_fixture():
    k3 = MaxKVcInstance.from_edges(3, [(1, 2), (2, 3), (1, 3)], 1, 2)
    out = from_max_k_vertex_cover(k3)
    r = capacity_vector_dp(out.instance)
    assert r.optimum == Fraction(5, 2)
    assert r.optimum >= out.threshold  # (3 + 2) / 2
    cover = out.back_map(r.witness)
    assert vertex_set_ok(k3, cover)


def test_max_kvc_structure():
    g = MaxKVcInstance.from_edges(4, [(1, 2), (2, 3), (3, 4)], 2, 3)
    inst = from_max_k_vertex_cover(g).instance
    prof = parameter_profile(inst)
    assert prof.max_capacity == 2  # K = k
    assert prof.max_request_support == 2  # every user requests both endpoints
    # Once-subdivided star: central cache sees all users, each user also has
    # exactly one private unit cache.
    assert inst.cache_neighbors("c") == set(inst.users)
    for u in inst.users:
        private = inst.user_neighbors(u) - {"c"}
        assert len(private) == 1
        assert inst.cache_neighbors(private.pop()) == {u}


def test_planar_e3_roundtrip():
    f = CnfFormula(
        2,
        (
            ((1, True), (2, True)),
            ((1, False), (2, False)),
            ((1, True), (2, False)),
        ),
    )
    check_planar_e3(f)
    out = from_planar_3sat_e3(f)
    assert out.threshold == len(out.instance.users)
    r = capacity_vector_dp(out.instance)
    assert (r.optimum >= out.threshold) == oracles.sat_oracle(f)
    if r.optimum >= out.threshold:
        assert sat_assignment_ok(f, out.back_map(r.witness))


def test_planar_e3_rejects_wrong_occurrence_count():
    with pytest.raises(InvalidFormula):
        from_planar_3sat_e3(CnfFormula(2, (((1, True), (2, True)),)))


def test_monotone_checker_allows_triangle(triangle_formula):
    check_monotone_nae_b3(triangle_formula)


def test_interreduce_case1_merges_caches():
    from netcache import Instance, User

    inst = Instance(
        {"s1": 1, "s2": 1},
        {"c1": 1, "c2": 2},
        {"u1": User(Fraction(1), {"s1": Fraction(1, 2), "s2": Fraction(1, 2)})},
        frozenset({("c1", "u1"), ("c2", "u1")}),
    )
    out = interreduce(inst, 1)
    assert out.caches == {"c1": 2}  # summed 3, clamped to total size 2
    assert len(out.caches) <= 2 ** len(out.users)


def test_interreduce_case2_merges_users():
    from netcache import Instance, User

    inst = Instance(
        {"s1": 1, "s2": 1},
        {"c1": 1},
        {
            "u1": User(Fraction(1), {"s1": Fraction(1)}),
            "u2": User(Fraction(3), {"s2": Fraction(1)}),
        },
        frozenset({("c1", "u1"), ("c1", "u2")}),
    )
    out = interreduce(inst, 2)
    assert set(out.users) == {"u1"}
    merged = out.users["u1"]
    assert merged.weight == 4
    assert merged.requests == {"s1": Fraction(1, 4), "s2": Fraction(3, 4)}
    assert brute_force(inst).optimum == brute_force(out).optimum


def test_interreduce_case3_unit_capacities():
    from netcache import Instance, User

    inst = Instance(
        {"s1": 1, "s2": 1, "s3": 1},
        {"c1": 3},
        {"u1": User(Fraction(1), {"s1": Fraction(1)})},
        frozenset({("c1", "u1")}),
    )
    out = interreduce(inst, 3)
    assert set(out.caches) == {"c1#1", "c1#2", "c1#3"}
    assert all(cap == 1 for cap in out.caches.values())


def test_interreduce_case4_unit_support():
    from netcache import Instance, User

    inst = Instance(
        {"s1": 1, "s2": 1},
        {"c1": 1},
        {"u1": User(Fraction(2), {"s1": Fraction(3, 5), "s2": Fraction(2, 5)})},
        frozenset({("c1", "u1")}),
    )
    out = interreduce(inst, 4)
    assert set(out.users) == {"u1@s1", "u1@s2"}
    assert out.users["u1@s1"].weight == Fraction(6, 5)
    assert parameter_profile(out).max_request_support == 1
    assert brute_force(inst).optimum == brute_force(out).optimum


def test_interreduce_case4_rejects_mixed_sizes(ex2):
    with pytest.raises(NotHomogeneous):
        interreduce(ex2, 4)


def test_interreduce_rejects_unknown_case(ex1):
    with pytest.raises(InvalidCase):
        interreduce(ex1, 6)


def test_interreduce_rescales_equal_sizes():
    from netcache import Instance, User

    inst = Instance(
        {"s1": 2, "s2": 2},
        {"c1": 4},
        {"u1": User(Fraction(1), {"s1": Fraction(1, 2), "s2": Fraction(1, 2)})},
        frozenset({("c1", "u1")}),
    )
    out = interreduce(inst, 3)
    assert set(out.caches) == {"c1#1", "c1#2"}


@pytest.mark.parametrize("case", [1, 2, 3, 4, 5])
def test_interreduce_preserves_optimum_randomized(case):
    for seed in range(60):
        rng = random.Random(f"{"inter"}-{case}-{seed}")
        inst = generate.random_instance(
            rng, max_caches=3, max_users=3, max_contents=4, homogeneous=True
        )
        out = interreduce(inst, case)
        assert brute_force(inst).optimum == capacity_vector_dp(out).optimum


def test_problem_validators():
    with pytest.raises(InvalidInstance):
        BinPackingInstance((), 1, 1)
    with pytest.raises(InvalidInstance):
        KnapsackInstance(0, ((1, 1),), 1)
    with pytest.raises(InvalidInstance):
        MaxKVcInstance.from_edges(2, [(1, 1)], 1, 0)
    with pytest.raises(InvalidFormula):
        CnfFormula(1, (((2, True),),))


def test_oracles_small_cases(triangle_formula):
    assert not oracles.nae_oracle(triangle_formula)
    assert oracles.sat_oracle(triangle_formula)
    assert oracles.binpack_oracle(BinPackingInstance((4, 3, 3, 2, 2, 2), 2, 8))
    assert not oracles.binpack_oracle(BinPackingInstance((5, 4, 3, 3), 2, 7))
    assert (
        oracles.knapsack_oracle(
            KnapsackInstance(10, ((6, 30), (3, 14), (4, 16), (2, 9)), 1)
        )
        == 46
    )
    k3 = MaxKVcInstance.from_edges(3, [(1, 2), (2, 3), (1, 3)], 1, 0)
    assert oracles.max_kvc_oracle(k3) == 2
