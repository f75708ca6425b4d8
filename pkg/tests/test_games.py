import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import (
    all_games,
    desirability_oracle,
    maximal_losing_of,
    minimal_of,
    naive_table,
    random_game,
    table_bits,
)
from votedim import bits
from votedim.constructions import example_game
from votedim.games import (
    AND,
    OR,
    ExplicitGame,
    Rel,
    SizeCapExceeded,
    VectorGame,
    WeightedGame,
    add_null_voters,
    desirability,
    dual,
    evaluate,
    explicit,
    games_equal,
    is_complete,
    is_monotone,
    maximal_losing,
    minimal_winning,
    truth_table,
    validate,
    weighted,
)


def weighted_games(max_n=6):
    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(st.integers(1, 3 * n), st.lists(st.integers(0, 4), min_size=n, max_size=n))
    ).map(lambda t: weighted(t[0], t[1]))


def vector_games():
    @st.composite
    def build(draw):
        t = draw(st.integers(1, 3))
        sizes = draw(st.lists(st.integers(1, 3), min_size=t, max_size=t))
        vec = tuple(draw(st.integers(0, s)) for s in sizes)
        if not any(vec):
            vec = (1,) + vec[1:]
        return VectorGame(tuple(sizes), (vec,))

    return build().filter(lambda g: not validate(g))


# -- basics --------------------------------------------------------------------


def test_example1_structure():
    g = example_game(1)
    assert g.n == 4
    assert [bits.members(m) for m in minimal_winning(g)] == [(1, 2), (3, 4)]
    assert is_complete(g) == (False, None)


def test_coalition_bits_are_one_based():
    assert bits.coalition([1, 3]) == 0b101
    assert bits.members(0b101) == (1, 3)
    with pytest.raises(ValueError):
        bits.coalition([0])
    with pytest.raises(ValueError):
        bits.coalition([5], n=4)


def test_evaluate_rejects_out_of_range():
    with pytest.raises(ValueError):
        evaluate(example_game(1), 1 << 4)


def test_weighted_rejects_floats():
    with pytest.raises(TypeError):
        weighted(1.5, [1, 1])


def test_size_cap_is_loud():
    g = weighted(1, [1] * 30)
    with pytest.raises(SizeCapExceeded):
        truth_table(g)


# -- tables against the coalition-by-coalition oracle --------------------------


@given(st.integers(1, 6), st.integers(0, 10**6))
def test_explicit_table_matches_oracle(n, seed):
    g = random_game(n, random.Random(seed))
    assert table_bits(truth_table(g)) == naive_table(g)


@given(weighted_games())
def test_weighted_table_matches_oracle(g):
    assert table_bits(truth_table(g)) == naive_table(g)


@given(vector_games())
def test_vector_table_matches_oracle(g):
    assert table_bits(truth_table(g)) == naive_table(g)


@given(weighted_games(4), weighted_games(4))
def test_combination_tables(a, b):
    if a.n != b.n:
        return
    for c in (AND(a, b), OR(a, b)):
        assert table_bits(truth_table(c)) == naive_table(c)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_extremal_coalitions_exhaustive(n):
    for g in all_games(n):
        t = naive_table(g)
        assert list(minimal_winning(g)) == minimal_of(t, n)
        assert list(maximal_losing(g)) == maximal_losing_of(t, n)
        assert is_monotone(truth_table(g))


def test_non_monotone_table_detected():
    import numpy as np

    tt = np.array([False, True, False, False])  # {1} wins, {1,2} loses
    assert not is_monotone(tt)


# -- desirability --------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_desirability_matches_oracle(n):
    for g in all_games(n):
        t = naive_table(g)
        rep = desirability(g)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                ge, le = desirability_oracle(t, n, i, j), desirability_oracle(t, n, j, i)
                want = Rel.EQUIV if ge and le else Rel.ABOVE if ge else Rel.BELOW if le else Rel.INCOMPARABLE
                assert rep.rel(i, j) is want


def test_example2_classes():
    g = explicit(6, [[1, 2]] + [[1] + list(c) for c in [(3, 4, 5), (3, 4, 6), (3, 5, 6), (4, 5, 6)]]
                 + [[2] + list(c) for c in [(3, 4, 5), (3, 4, 6), (3, 5, 6), (4, 5, 6)]] + [[3, 4, 5, 6]])
    assert games_equal(g, example_game(2))
    ok, classes = is_complete(g)
    assert ok and classes == ((1, 2), (3, 4, 5, 6))


# -- duality, equality, null voters --------------------------------------------


@given(st.integers(1, 5), st.integers(0, 10**6))
def test_dual_is_complement_of_complement(n, seed):
    g = random_game(n, random.Random(seed))
    d = dual(g)
    tg, td = truth_table(g), truth_table(d)
    full = bits.full(n)
    assert all(td[S] == (not tg[full ^ S]) for S in range(1 << n))
    assert games_equal(dual(d), g)


@given(weighted_games(5))
def test_dual_weighted(g):
    if g.quota > sum(g.weights):
        return
    d = dual(g)
    assert isinstance(d, WeightedGame)
    assert games_equal(d, dual(ExplicitGame(g.n, minimal_winning(g))))


@given(vector_games())
def test_dual_vector(g):
    assert games_equal(dual(g), dual(ExplicitGame(g.n, minimal_winning(g))))


def test_games_equal_vector_path_matches_tables():
    g = example_game(2)
    w = AND(weighted(8, [5, 3, 2, 2, 2, 2]), weighted(8, [3, 5, 2, 2, 2, 2]))
    assert games_equal(g, w)
    assert not games_equal(g, weighted(2, [1, 1, 0, 0, 0, 0]))
    assert not games_equal(g, example_game(1))


def test_games_equal_large_symmetric():
    # 60 voters: only the vector-level comparison is feasible
    g = VectorGame((30, 30), ((2, 0), (0, 4)))
    rep = OR(weighted(2, [1] * 30 + [0] * 30), weighted(4, [1] * 60))
    assert games_equal(g, rep)
    assert not games_equal(g, weighted(2, [1] * 30 + [0] * 30))


@given(st.integers(1, 4), st.integers(0, 10**6), st.integers(0, 2))
def test_null_voters(n, seed, k):
    g = random_game(n, random.Random(seed))
    h = add_null_voters(g, k)
    assert h.n == n + k
    for S in range(1 << h.n):
        assert evaluate(h, S) == evaluate(g, S & bits.full(n))


@given(vector_games(), st.integers(1, 2))
def test_null_voters_vector(g, k):
    h = add_null_voters(g, k)
    assert isinstance(h, VectorGame) and not validate(h)
    assert games_equal(h, add_null_voters(ExplicitGame(g.n, minimal_winning(g)), k))


def test_null_voter_capacity():
    with pytest.raises(ValueError):
        add_null_voters(weighted(1, [1] * 127), 2)


# -- validation ----------------------------------------------------------------


def test_validate_flags_problems():
    assert validate(example_game(1)) == []
    assert validate(ExplicitGame(3, (0b011, 0b001)))  # not an antichain
    assert validate(ExplicitGame(3, ()))
    assert validate(WeightedGame(Fraction(0), (Fraction(1),)))
    assert validate(WeightedGame(Fraction(5), (Fraction(1), Fraction(1))))
    assert validate(VectorGame((2, 2), ((1, 0), (0, 1))))  # dominated pair
    assert validate(VectorGame((2, 2), ((0, 2),)))  # both classes equally desirable
    assert validate(VectorGame((2, 2), ((2, 0),))) == []  # second class null but strictly weaker
    assert validate(VectorGame((2, 4), ((2, 0), (0, 4)))) == []
