import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from amenkit.errors import ResourceLimit, TooFewPoints
from amenkit.semigroup import RZ2, Z2, generated_subsemigroup, random_semigroup
from amenkit.universe import (
    BICYCLIC_P,
    BICYCLIC_Q,
    BallTable,
    Collision,
    FreeUpTo,
    NotFoundUpTo,
    ball,
    bicyclic_multiply,
    bicyclic_universe,
    classify_growth,
    evaluate_word,
    free_pair_check,
    free_universe,
    freecomm_universe,
    growth_table,
    intersection_from_collision,
    right_ideal_intersection_search,
    table_universe,
    transformation_universe,
)

P, Q = BICYCLIC_P, BICYCLIC_Q
E1, E2 = (1, 0), (0, 1)


def test_bicyclic_relation():
    assert bicyclic_multiply(P, Q) == (0, 0)
    assert bicyclic_multiply(Q, P) == (1, 1)
    x, y, z = (2, 1), (0, 3), (1, 1)
    assert bicyclic_multiply(bicyclic_multiply(x, y), z) == bicyclic_multiply(x, bicyclic_multiply(y, z))


def test_ball_examples():
    assert len(ball(free_universe(2), 3)) == 14
    B2 = ball(bicyclic_universe(), 2)
    assert B2 == {P, Q, (0, 2), (0, 0), (1, 1), (2, 0)}
    assert len(ball(freecomm_universe(2), 3)) == 9
    assert ball(free_universe(2), 0) == frozenset()


def test_growth_table_examples():
    assert growth_table(freecomm_universe(2), 4) == [2, 5, 9, 14]
    assert growth_table(free_universe(2), 4) == [2, 6, 14, 30]
    assert growth_table(bicyclic_universe(), 3) == [2, 6, 10]


@pytest.mark.parametrize("U,gens", [
    (free_universe(2), None),
    (freecomm_universe(3), None),
    (bicyclic_universe(), None),
])
def test_balls_match_word_listing(U, gens):
    for i in range(1, 8):
        assert ball(U, i) == oracles.word_products(U.mul, U.generators, i)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_freecomm_lattice_count(k):
    from math import comb
    sizes = growth_table(freecomm_universe(k), 8)
    assert sizes == [comb(i + k, k) - 1 for i in range(1, 9)]


def test_balls_are_nested():
    T = BallTable(bicyclic_universe())
    for i in range(1, 10):
        assert T.ball(i) <= T.ball(i + 1)
        assert all(T.contains(x, i + 1) for x in T.ball(i))


def test_table_universe_saturates_at_generated_subsemigroup():
    S = random_semigroup(random.Random(3), max_order=5)
    for gens in ([0], [0, 1] if S.n > 1 else [0]):
        U = table_universe(S, gens)
        T = BallTable(U).saturate()
        assert set(T.ball(T.radius)) == set(generated_subsemigroup(S, gens))


def test_ball_cap():
    with pytest.raises(ResourceLimit):
        BallTable(free_universe(2), cap=50).grow(10)


def test_transformation_universe_is_finite():
    U = transformation_universe(3, [(1, 2, 0), (0, 0, 2)])
    T = BallTable(U).saturate()
    assert T.size(T.radius) == T.size(T.radius + 1)


# -- growth heuristic ----------------------------------------------------------------

def test_classify_polynomial():
    g = classify_growth([2, 5, 9, 14, 20, 27, 35])
    assert g.kind == "polynomial" and g.heuristic
    assert 1 <= g.estimate <= 2


def test_classify_exponential():
    g = classify_growth([2, 6, 14, 30, 62, 126, 254])
    assert g.kind == "exponential"
    assert abs(g.estimate - 2) < 0.1


def test_classify_table_universe():
    sizes = growth_table(table_universe(Z2), 8)
    g = classify_growth(sizes)
    assert g.kind == "polynomial" and g.estimate == 0


def test_classify_needs_points():
    with pytest.raises(TooFewPoints):
        classify_growth([2, 5, 9])


def test_classify_mixed_is_inconclusive():
    assert classify_growth([1, 2, 3, 4, 5, 6, 9, 11]).kind == "inconclusive"


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_classify_every_table_universe_polynomial_zero(seed):
    S = random_semigroup(random.Random(seed), max_order=5)
    sizes = growth_table(table_universe(S), 10)
    g = classify_growth(sizes)
    assert g.kind == "polynomial" and g.estimate == 0


# -- free pairs and common multiples -------------------------------------------------

def test_free_pair_free_semigroup():
    U = free_universe(2)
    assert free_pair_check(U, *U.generators, 6) == FreeUpTo(6)


def test_free_pair_bicyclic():
    U = bicyclic_universe()
    c = free_pair_check(U, P, Q, 3)
    assert isinstance(c, Collision) and c.u != c.v
    assert evaluate_word(U, P, Q, c.u) == evaluate_word(U, P, Q, c.v)
    assert evaluate_word(U, P, Q, "aba") == evaluate_word(U, P, Q, "a")


def test_free_pair_table_z2():
    U = table_universe(Z2)
    c = free_pair_check(U, 0, 1, 3)
    assert isinstance(c, Collision)
    assert evaluate_word(U, 0, 1, c.u) == evaluate_word(U, 0, 1, c.v)
    assert evaluate_word(U, 0, 1, "aa") == evaluate_word(U, 0, 1, "bb") == 0


def check_common(U, a, b, cm):
    assert U.mul(a, cm.right_a) == cm.element == U.mul(b, cm.right_b)


def test_intersection_from_collision_examples():
    U = table_universe(Z2)
    cm = intersection_from_collision(U, 0, 1, "aa", "bb")
    check_common(U, 0, 1, cm)
    U = table_universe(RZ2)
    c = free_pair_check(U, 0, 1, 3)
    check_common(U, 0, 1, intersection_from_collision(U, 0, 1, c.u, c.v))
    U = bicyclic_universe()
    cm = intersection_from_collision(U, P, Q, "aba", "a")
    check_common(U, P, Q, cm)
    c = free_pair_check(U, P, Q, 3)
    check_common(U, P, Q, intersection_from_collision(U, P, Q, c.u, c.v))


def test_intersection_rejects_non_collision():
    with pytest.raises(ValueError):
        intersection_from_collision(free_universe(2), (0,), (1,), "a", "b")


def test_right_ideal_intersection_examples():
    U = bicyclic_universe()
    cm = right_ideal_intersection_search(U, P, Q, 3)
    check_common(U, P, Q, cm)
    U = free_universe(2)
    assert right_ideal_intersection_search(U, *U.generators, 6) == NotFoundUpTo(6)
    U = freecomm_universe(2)
    cm = right_ideal_intersection_search(U, E1, E2, 2)
    assert cm.element == (1, 1)


@pytest.mark.parametrize("U", [freecomm_universe(2), freecomm_universe(3), bicyclic_universe(),
                               free_universe(1), free_universe(2)], ids=lambda U: U.name)
def test_klawe_dichotomy_observable(U):
    fl = U.flags
    if not (fl.commutative or fl.inverse or fl.left_cancellative):
        pytest.skip("no Klawe-implying flag")
    gens = U.generators
    pairs = [(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    meets = all(not isinstance(right_ideal_intersection_search(U, a, b, 4), NotFoundUpTo) for a, b in pairs)
    free = all(isinstance(free_pair_check(U, a, b, L), FreeUpTo) for a, b in pairs for L in (2, 4, 6))
    assert meets or free
