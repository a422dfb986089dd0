from fractions import Fraction

import pytest

from netcache import CnfFormula, Instance, User
from netcache.reductions import from_monotone_nae3sat


@pytest.fixture
def ex1():
    """Single unit cache, one user preferring s1 (3/5) over s2 (2/5)."""
    return Instance(
        contents={"s1": 1, "s2": 1},
        caches={"c1": 1},
        users={"u1": User(Fraction(1), {"s1": Fraction(3, 5), "s2": Fraction(2, 5)})},
        edges=frozenset({("c1", "u1")}),
    )


@pytest.fixture
def ex2():
    """Two caches (capacities 2 and 1), sizes 2 and 1, both contents fit."""
    return Instance(
        contents={"s1": 2, "s2": 1},
        caches={"c1": 2, "c2": 1},
        users={"u1": User(Fraction(1), {"s1": Fraction(1, 2), "s2": Fraction(1, 2)})},
        edges=frozenset({("c1", "u1"), ("c2", "u1")}),
    )


@pytest.fixture
def ex3():
    """One unit cache shared by a weight-1 and a weight-2 single-content user."""
    return Instance(
        contents={"s1": 1, "s2": 1},
        caches={"c1": 1},
        users={
            "u1": User(Fraction(1), {"s1": Fraction(1)}),
            "u2": User(Fraction(2), {"s2": Fraction(1)}),
        },
        edges=frozenset({("c1", "u1"), ("c1", "u2")}),
    )


@pytest.fixture
def triangle_formula():
    """(x1 v x2)(x2 v x3)(x1 v x3): monotone, B3, not NAE-satisfiable."""
    return CnfFormula(
        3, (((1, True), (2, True)), ((2, True), (3, True)), ((1, True), (3, True)))
    )


@pytest.fixture
def triangle_instance(triangle_formula):
    return from_monotone_nae3sat(triangle_formula).instance
