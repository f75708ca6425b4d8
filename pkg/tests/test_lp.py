import random
from fractions import Fraction

from hypothesis import given, strategies as st

from oracles import lp_oracle
from votedim import bits
from votedim.lp import Infeasible, RationalSolution, SeparationProblem, lp_feasible, solve_rows


def test_example1_certificate_forces_infeasibility():
    # accept {1,2},{3,4}; reject {1,3},{2,4}: 2q <= w(N) <= 2(q-1)
    p = SeparationProblem(4, accept=[0b0011, 0b1100], reject=[0b0101, 0b1010])
    res = lp_feasible(p)
    assert isinstance(res, Infeasible) and not res
    assert res.check()
    assert set(res.accept) == {0b0011, 0b1100} and set(res.reject) == {0b0101, 0b1010}


def test_feasible_solution_re_substitutes():
    p = SeparationProblem(4, accept=[0b0011, 0b1100], reject=[0b0101])
    res = lp_feasible(p)
    assert isinstance(res, RationalSolution)
    assert res.satisfies(p)
    q, w = res.integral()
    assert all(isinstance(x, int) for x in w)


def test_tampered_certificate_fails_check():
    p = SeparationProblem(4, accept=[0b0011, 0b1100], reject=[0b0101, 0b1010])
    res = lp_feasible(p)
    bad = Infeasible(4, dict(res.accept), {0b0101: Fraction(1)}, {})
    assert not bad.check()


def test_no_rejections_is_trivially_feasible():
    res = lp_feasible(SeparationProblem(3, accept=[0b111]))
    assert res and res.satisfies(SeparationProblem(3, accept=[0b111]))


def test_order_constraints():
    # without order, reject {1} and accept {2} is fine; with w1 >= w2 it is not
    p = SeparationProblem(2, accept=[0b10], reject=[0b01])
    assert lp_feasible(p)
    res = lp_feasible(SeparationProblem(2, accept=[0b10], reject=[0b01], order=[(1, 2)]))
    assert not res and res.check() and res.order


def test_oracle_constraints_are_generated():
    # accept every 2-set of 4 voters through the oracle only; reject {1,2,3}? impossible
    n = 4
    pairs = [bits.coalition(c) for c in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]]

    def oracle(w, q):
        return [(q - sum(w[i - 1] for i in bits.members(a)), a) for a in pairs
                if sum(w[i - 1] for i in bits.members(a)) < q]

    res = lp_feasible(SeparationProblem(n, reject=[0b0001], accept_oracle=oracle))
    assert res and res.satisfies(SeparationProblem(n, reject=[0b0001], accept_oracle=oracle))
    res = lp_feasible(SeparationProblem(n, reject=[0b0011, 0b1100], accept_oracle=oracle))
    assert not res and res.check()


@given(st.integers(2, 6), st.integers(0, 10**6))
def test_verdict_matches_float_oracle(n, seed):
    rng = random.Random(seed)
    full = bits.full(n)
    accept = sorted({rng.randint(1, full) for _ in range(rng.randint(1, 6))})
    reject = sorted({rng.randint(0, full) for _ in range(rng.randint(1, 4))} - set(accept))
    # rejected coalitions must not contain accepted ones, else trivially infeasible
    p = SeparationProblem(n, accept=accept, reject=reject)
    res = lp_feasible(p)
    assert bool(res) == lp_oracle(n, accept, reject)
    if res:
        assert res.satisfies(p)
    else:
        assert res.check()


def test_solve_rows_generic():
    # x0 - x1 >= 0 and x1 - x0 >= 1 has no solution
    rows = [("a", 0, [(0, 1), (1, -1)], 0), ("b", 0, [(1, 1), (0, -1)], 1)]
    x, mult = solve_rows(2, rows)
    assert x is None and mult
