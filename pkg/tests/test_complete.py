import itertools

import pytest
from hypothesis import given, strategies as st

from oracles import all_games, naive_table
from votedim.complete import (
    _predecessors,
    box,
    calibrate_offset,
    count_formula_t2,
    count_t2,
    dominates,
    enumerate_t2,
    fib,
    from_oracle,
    from_shift_max_losing,
    is_winning_vector,
    maximal_losing_vectors,
    minimal_winning_vectors,
    shift_extremal,
    strict_adjacent_classes,
)
from votedim.constructions import example_game, prop_ne_game
from votedim.games import VectorGame, games_equal, is_complete, validate


def test_example2_vectors():
    g = example_game(2)
    assert minimal_winning_vectors(g) == [(0, 4), (1, 3), (2, 0)]
    smin, smax = shift_extremal(g)
    assert smin == [(0, 4), (2, 0)]
    assert smax == [(1, 2)]
    assert maximal_losing_vectors(g) == [(0, 3), (1, 2)]


def test_dominates_prefix_sums():
    assert dominates((1, 0), (0, 1))
    assert not dominates((0, 1), (1, 0))
    assert dominates((2, 1), (1, 2))
    with pytest.raises(ValueError):
        dominates((1,), (1, 0))


def test_out_of_bounds_vector():
    with pytest.raises(ValueError):
        is_winning_vector(example_game(2), (3, 0))


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_covering_steps_generate_domination(sizes):
    # reflexive-transitive closure of the two step kinds equals the prefix-sum order
    vecs = list(box(sizes))
    below = {m: {m} for m in vecs}
    for m in sorted(vecs, key=lambda m: (sum(m), m)):  # shift steps keep the sum, lower lex
        for p in _predecessors(m, sizes):
            below[m] |= below[p]
    for a, b in itertools.product(vecs, repeat=2):
        assert (b in below[a]) == dominates(a, b)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_from_oracle_round_trip(n):
    for g in all_games(n):
        ok, _ = is_complete(g)
        if not ok:
            continue
        vg = from_oracle(g)
        assert not validate(vg)
        assert naive_table(vg) == naive_table(g)


def test_strict_adjacent_classes_matches_desirability():
    for n in range(2, 6):
        for g in enumerate_t2(n):
            vg = VectorGame(g.class_sizes, g.shift_min_winning)
            ok, classes = is_complete(vg)
            assert ok and len(classes) == 2 == g.t


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_enumerate_t2_against_brute_force(n):
    # all simple games on n voters, keep complete ones with two classes, count up to isomorphism
    seen = set()
    for g in all_games(n):
        ok, classes = is_complete(g)
        if ok and len(classes) == 2:
            vg = from_oracle(g)
            seen.add((vg.class_sizes, vg.shift_min_winning))
    listed = {(g.class_sizes, g.shift_min_winning) for g in enumerate_t2(n)}
    assert listed == seen


def test_count_t2_matches_enumeration():
    for n in range(2, 9):
        assert len(enumerate_t2(n)) == count_t2(n)


def test_published_formula_off_by_8n():
    counts = {n: len(enumerate_t2(n)) for n in range(4, 9)}
    for n, c in counts.items():
        assert count_formula_t2(n) - c == 8 * n
    assert calibrate_offset(counts) is None


def test_fib_convention():
    assert [fib(k) for k in range(1, 8)] == [1, 1, 2, 3, 5, 8, 13]


def test_from_shift_max_losing_example2():
    g = from_shift_max_losing((2, 4), [(1, 2)])
    assert g.shift_min_winning == ((0, 4), (2, 0))
    assert games_equal(g, example_game(2))


def test_from_shift_max_losing_rejects_bad_input():
    with pytest.raises(ValueError):
        from_shift_max_losing((2, 4), [(1, 2), (0, 2)])  # (1,2) dominates (0,2)
    with pytest.raises(ValueError):
        from_shift_max_losing((2, 2), [(2, 2)])
    with pytest.raises(ValueError):
        from_shift_max_losing((2, 2), [])


def test_prop_ne_vectors():
    g = prop_ne_game(20)
    assert g.shift_min_winning == ((0, 0, 0, 17), (0, 0, 13, 0), (0, 9, 0, 0), (5, 0, 0, 0))
    assert g.is_winning((0, 9, 0, 0)) and g.is_winning((0, 0, 0, 17))
    assert not g.is_winning((4, 4, 4, 4))
    assert g.is_winning((4, 4, 4, 5))
    assert shift_extremal(g)[1] == [(4, 4, 4, 4)]
    assert strict_adjacent_classes(g) == [True, True, True]
