"""Weightedness: separating weighted games, trading transforms and certificates."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import bits
from .complete import maximal_losing_vectors, minimal_winning_vectors
from .games import (
    DEFAULT_CAP,
    Game,
    SizeCapExceeded,
    VectorGame,
    WeightedGame,
    evaluate,
    maximal_losing,
    minimal_winning,
    truth_table,
)
from .lp import Infeasible, RationalSolution, SeparationProblem, lp_feasible, solve_rows


class Verdict(str, enum.Enum):
    VALID = "valid-certificate"
    BALANCED = "balanced-but-not-certificate"
    UNBALANCED = "unbalanced"


@dataclass(frozen=True)
class TradingTransform:
    X: tuple[int, ...]
    Y: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "X", tuple(self.X))
        object.__setattr__(self, "Y", tuple(self.Y))

    @property
    def length(self) -> int:
        return len(self.X)

    def is_balanced(self) -> bool:
        if len(self.X) != len(self.Y):
            return False
        width = max([m.bit_length() for m in self.X + self.Y] or [0])
        for i in range(width):
            if sum((x >> i) & 1 for x in self.X) != sum((y >> i) & 1 for y in self.Y):
                return False
        return True

    @classmethod
    def of(cls, X: Iterable[Iterable[int]], Y: Iterable[Iterable[int]]) -> "TradingTransform":
        return cls(tuple(bits.coalition(c) for c in X), tuple(bits.coalition(c) for c in Y))


def verify_trading_transform(g: Game, tt: TradingTransform) -> Verdict:
    for m in tt.X + tt.Y:
        bits.check(m, g.n)
    if not tt.is_balanced():
        return Verdict.UNBALANCED
    if all(evaluate(g, x) for x in tt.X) and not any(evaluate(g, y) for y in tt.Y):
        return Verdict.VALID
    return Verdict.BALANCED


# -- separation ----------------------------------------------------------------


class Separator:
    """Memoised separation LPs for one game.

    Every solve accepts all minimal winning coalitions (hence all winning
    coalitions, weights being non-negative) and rejects the given losing
    coalitions.
    """

    def __init__(self, g: Game, cap: int = DEFAULT_CAP):
        self.game = g
        self.n = g.n
        self.table = truth_table(g, cap)
        self.accept = minimal_winning(g, cap)
        self.memo: dict[frozenset[int], RationalSolution | Infeasible] = {}
        self.calls = 0

    def solve(self, losing: Iterable[int]) -> RationalSolution | Infeasible:
        key = frozenset(losing)
        res = self.memo.get(key)
        if res is None:
            for T in key:
                if self.table[T]:
                    raise ValueError(f"coalition {bits.fmt(T)} is winning")
            self.calls += 1
            res = lp_feasible(SeparationProblem(self.n, accept=self.accept, reject=sorted(key)))
            self.memo[key] = res
        return res

    def witness(self, losing: Iterable[int]) -> WeightedGame | None:
        res = self.solve(losing)
        return res.game() if res else None


def separate(g: Game, losing: Iterable[int], cap: int = DEFAULT_CAP) -> WeightedGame | None:
    """A weighted game accepting every winning coalition of ``g`` and rejecting ``losing``."""
    return Separator(g, cap).witness(losing)


def is_weighted(g: Game, cap: int = DEFAULT_CAP) -> WeightedGame | None:
    """A weighted representation of ``g`` or ``None``.

    Vector games are decided on type vectors with class-uniform weights,
    which is enough: averaging any representation over permutations inside
    the classes gives a class-uniform one.
    """
    if isinstance(g, WeightedGame):
        return g
    if isinstance(g, VectorGame) and g.n > cap:
        return _vector_weighted(g)
    res = lp_feasible(SeparationProblem(g.n, accept=minimal_winning(g, cap), reject=maximal_losing(g, cap)))
    return res.game() if res else None


def _vector_weighted(g: VectorGame) -> WeightedGame | None:
    t = g.t
    rows = [("accept", m, [(h, x) for h, x in enumerate(m)] + [(t, -1)], 0) for m in minimal_winning_vectors(g)]
    rows += [("reject", m, [(h, -x) for h, x in enumerate(m)] + [(t, 1)], 1) for m in maximal_losing_vectors(g)]
    x, _ = solve_rows(t + 1, rows)
    if x is None:
        return None
    per_voter = [Fraction(0)] * g.n
    for h, cls in enumerate(g.classes):
        for v in cls:
            per_voter[v - 1] = x[h]
    return RationalSolution(tuple(per_voter), x[t]).game()


def _cheapest_fill_oracle(g: VectorGame):
    vecs = minimal_winning_vectors(g)
    classes = g.classes

    def oracle(w: Sequence[int], q: int) -> list[tuple[int, int]]:
        ranked, prefix = [], []
        for cls in classes:
            order = sorted(cls, key=lambda v: (w[v - 1], v))
            ranked.append(order)
            acc = [0]
            for v in order:
                acc.append(acc[-1] + w[v - 1])
            prefix.append(acc)
        out = []
        for m in vecs:
            cost = sum(p[k] for p, k in zip(prefix, m))
            if cost < q:
                S = 0
                for order, k in zip(ranked, m):
                    for v in order[:k]:
                        S |= 1 << (v - 1)
                out.append((q - cost, S))
        return out

    return oracle


def ordered_separation(g: VectorGame, T: int, respect_order: bool = True) -> RationalSolution | Infeasible:
    """Separate ``T`` from all winning coalitions, optionally with weights respecting the class order.

    Winning coalitions are never listed: for candidate weights the cheapest
    coalition of each minimal winning type takes the lightest members of
    each class, and violated ones are added as constraints.
    """
    bits.check(T, g.n)
    if g.is_winning(g.type_of(T)):
        raise ValueError(f"coalition {bits.fmt(T)} is winning")
    order = []
    if respect_order:
        for p, q in itertools.combinations(range(g.t), 2):
            order.extend(itertools.product(g.classes[p], g.classes[q]))
    problem = SeparationProblem(g.n, reject=[T], order=order, accept_oracle=_cheapest_fill_oracle(g))
    return lp_feasible(problem)


def ordered_separate(g: VectorGame, T: int, respect_order: bool = True) -> WeightedGame | None:
    res = ordered_separation(g, T, respect_order)
    return res.game() if res else None


# -- certificates --------------------------------------------------------------


class CertificateBudgetExceeded(RuntimeError):
    """Search gave up before deciding whether a short certificate exists."""

    def __init__(self, message: str, found: TradingTransform | None = None):
        super().__init__(message)
        self.found = found


def certificate_from_farkas(inf: Infeasible) -> TradingTransform:
    """Turn Farkas multipliers of an unordered separation LP into a certificate.

    Integer multipliers give X (accepted) and Y (rejected) sequences where
    every voter occurs at most as often in X as in Y and ``#X >= #Y``.
    Surplus X entries are dropped and the missing voters are added to X
    coalitions (supersets of winning coalitions still win).
    """
    if inf.order:
        raise ValueError("order multipliers do not translate into a trading transform")
    ys = list(inf.accept.values()) + list(inf.reject.values())
    L = lcm(*(y.denominator for y in ys))
    X = [a for a in sorted(inf.accept) for _ in range(int(inf.accept[a] * L))]
    Y = [r for r in sorted(inf.reject) for _ in range(int(inf.reject[r] * L))]
    X = X[: len(Y)]
    for i in range(inf.n):
        bit = 1 << i
        deficit = sum(1 for y in Y if y & bit) - sum(1 for x in X if x & bit)
        for k in range(len(X)):
            if deficit <= 0:
                break
            if not X[k] & bit:
                X[k] |= bit
                deficit -= 1
    return TradingTransform(tuple(X), tuple(Y))


def _length_two(g: Game, cap: int) -> TradingTransform | None:
    tt = truth_table(g, cap)
    mw = minimal_winning(g, cap)
    for a, b in itertools.combinations(mw, 2):
        common, diff = a & b, a ^ b
        free = bits.members(diff)
        for k in range(len(free) + 1):
            for part in itertools.combinations(free, k):
                A = bits.coalition(part)
                y1, y2 = common | A, common | (diff ^ A)
                if y1 > y2:
                    continue
                if not tt[y1] and not tt[y2]:
                    return TradingTransform((a, b), (y1, y2))
    return None


def length_two_certificate(g: Game, T1: int, T2: int, table=None) -> TradingTransform | None:
    """A length-2 certificate whose losing side is exactly ``(T1, T2)``."""
    tt = truth_table(g) if table is None else table
    common, diff = T1 & T2, T1 ^ T2
    free = bits.members(diff)
    for k in range(len(free) + 1):
        for part in itertools.combinations(free, k):
            A = bits.coalition(part)
            x1, x2 = common | A, common | (diff ^ A)
            if tt[x1] and tt[x2]:
                return TradingTransform((x1, x2), (T1, T2))
    return None


def find_certificate(g: Game, max_len: int | None = 4, cap: int = 16) -> TradingTransform | None:
    """A certificate of non-weightedness of length at most ``max_len`` (``None``: any length).

    Length two is searched exhaustively. Longer certificates come from the
    Farkas multipliers of the weightedness LP; if that certificate is longer
    than ``max_len`` the search is inconclusive and raises
    :class:`CertificateBudgetExceeded`. ``None`` is returned only when no
    certificate of the requested length exists.
    """
    if g.n > cap:
        raise SizeCapExceeded(f"certificate search is limited to {cap} voters")
    if max_len is not None and max_len < 2:
        # a length-1 transform has X = Y, which cannot be winning and losing
        return None
    found = _length_two(g, cap)
    if found is not None or max_len == 2:
        return found
    res = lp_feasible(SeparationProblem(g.n, accept=minimal_winning(g, cap), reject=maximal_losing(g, cap)))
    if res:
        return None
    cert = certificate_from_farkas(res)
    if max_len is not None and cert.length > max_len:
        raise CertificateBudgetExceeded(
            f"only found a certificate of length {cert.length} > {max_len}", found=cert
        )
    return cert
