import random

import pytest
from hypothesis import given, strategies as st

from oracles import all_games, is_weighted_oracle, lp_oracle, naive_table, random_game
from votedim import bits
from votedim.complete import enumerate_t2, from_oracle
from votedim.constructions import example1_certificate, example2_certificate, example_game, theorem_bundle
from votedim.games import ExplicitGame, VectorGame, games_equal, is_complete, maximal_losing, minimal_winning, weighted
from votedim.lp import SeparationProblem
from votedim.weightedness import (
    CertificateBudgetExceeded,
    Separator,
    TradingTransform,
    Verdict,
    certificate_from_farkas,
    find_certificate,
    is_weighted,
    length_two_certificate,
    ordered_separate,
    ordered_separation,
    separate,
    verify_trading_transform,
)


def test_published_certificates():
    assert verify_trading_transform(example_game(1), example1_certificate()) is Verdict.VALID
    assert verify_trading_transform(example_game(2), example2_certificate()) is Verdict.VALID


def test_verdicts():
    g = example_game(1)
    assert verify_trading_transform(g, TradingTransform.of([[1, 2]], [[1, 3]])) is Verdict.UNBALANCED
    assert verify_trading_transform(g, TradingTransform.of([[1, 2], [3, 4]], [[1, 2], [3, 4]])) is Verdict.BALANCED
    assert verify_trading_transform(g, TradingTransform.of([[1], [2]], [[1, 2]])) is Verdict.UNBALANCED


def test_example1_not_weighted():
    assert is_weighted(example_game(1)) is None
    cert = find_certificate(example_game(1), max_len=2)
    assert cert is not None and cert.length == 2
    assert verify_trading_transform(example_game(1), cert) is Verdict.VALID


def test_weighted_game_has_no_certificate():
    g = weighted(3, [1, 1, 1, 1, 1])
    assert games_equal(is_weighted(g), g)
    assert find_certificate(g, max_len=4) is None


def test_example2_pair_not_co_excludable():
    g = example_game(2)
    assert separate(g, [bits.coalition([1, 3, 4]), bits.coalition([2, 5, 6])]) is None
    w = separate(g, [bits.coalition([1, 3, 4]), bits.coalition([1, 3, 5])])
    assert w is not None


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_is_weighted_matches_enumeration_oracle(n):
    for g in all_games(n):
        t = naive_table(g)
        w = is_weighted(g)
        assert (w is not None) == is_weighted_oracle(t, n)
        if w is not None:
            assert naive_table(w) == t


@pytest.mark.parametrize("n", [2, 3, 4])
def test_certificate_duality_exhaustive(n):
    for g in all_games(n):
        cert = find_certificate(g, max_len=None)
        assert (cert is None) == (is_weighted(g) is not None)
        if cert is not None:
            assert verify_trading_transform(g, cert) is Verdict.VALID


@given(st.integers(0, 10**6))
def test_certificate_duality_random_n6(seed):
    g = random_game(6, random.Random(seed))
    cert = find_certificate(g, max_len=None)
    assert (cert is None) == (is_weighted(g) is not None)
    if cert is not None:
        assert verify_trading_transform(g, cert) is Verdict.VALID


@given(st.integers(3, 6), st.integers(0, 10**6))
def test_length_two_certificate_implies_lp_infeasible(n, seed):
    g = random_game(n, random.Random(seed))
    L = maximal_losing(g)
    for a, b in zip(L, L[1:]):
        cert = length_two_certificate(g, a, b)
        if cert is not None:
            assert verify_trading_transform(g, cert) is Verdict.VALID
            assert separate(g, [a, b]) is None
            assert not lp_oracle(n, minimal_winning(g), [a, b])


@given(st.integers(2, 6), st.integers(0, 10**6))
def test_each_maximal_losing_coalition_is_separable(n, seed):
    g = random_game(n, random.Random(seed))
    sep = Separator(g)
    for T in maximal_losing(g):
        res = sep.solve([T])
        assert res
        assert res.satisfies(SeparationProblem(n, accept=minimal_winning(g), reject=[T]))


def test_separate_rejects_winning_coalition():
    with pytest.raises(ValueError):
        separate(example_game(1), [0b0011])


def test_farkas_certificate_extraction():
    for g in all_games(5)[::50]:
        sep = Separator(g)
        res = sep.solve(maximal_losing(g))
        if not res:
            cert = certificate_from_farkas(res)
            assert verify_trading_transform(g, cert) is Verdict.VALID


def test_budget_exceeded_is_distinct_from_none(monkeypatch):
    import votedim.weightedness as W

    long_cert = TradingTransform((0b0011, 0b1100) * 2, (0b0101, 0b1010) * 2)
    monkeypatch.setattr(W, "_length_two", lambda g, cap: None)
    monkeypatch.setattr(W, "certificate_from_farkas", lambda inf: long_cert)
    with pytest.raises(CertificateBudgetExceeded) as e:
        W.find_certificate(example_game(1), max_len=3)
    assert e.value.found == long_cert
    assert W.find_certificate(example_game(1), max_len=2) is None  # none of length 2 exists (patched)


def test_theorem_pair_certificate_found():
    b = theorem_bundle(2)
    T1, T2 = b.losing_family
    cert = length_two_certificate(b.game, T1, T2)
    assert cert is not None and sorted(cert.X) == sorted(b.certificates[0].X)


# -- ordered separation --------------------------------------------------------


def test_ordered_agrees_with_unordered_on_small_complete_games():
    for n in range(2, 6):
        for g in enumerate_t2(n):
            for T in maximal_losing(g):
                a = ordered_separate(g, T, respect_order=False)
                b = separate(g, [T])
                assert (a is None) == (b is None)


def test_ordered_separation_weights_respect_classes():
    g = example_game(2)
    T = bits.coalition([1, 3, 4])
    w = ordered_separate(g, T)
    assert w is not None
    assert min(w.weights[:2]) >= max(w.weights[2:])
    assert naive_table(w) & naive_table(g) == naive_table(g)
    assert not naive_table(w) >> T & 1


def test_ordered_separation_of_winning_coalition_is_error():
    with pytest.raises(ValueError):
        ordered_separation(example_game(2), bits.coalition([1, 2]))


def test_vector_level_weightedness_large():
    g = VectorGame((30, 30), ((2, 0), (0, 4)))
    assert is_weighted(g) is None
    # x1 >= 1 and x1 + x2 >= 3 forces a > 28b and a < 2b
    assert is_weighted(VectorGame((30, 30), ((1, 2),))) is None
    h = VectorGame((30, 30), ((1, 1),))  # [31; 30 x30, 1 x30]
    w = is_weighted(h)
    assert w is not None and games_equal(w, h)
    assert games_equal(h, weighted(31, [30] * 30 + [1] * 30))
