"""Simple games: representations, evaluation and structural analysis.

Four representations share one functional interface:

* :class:`ExplicitGame` - minimal winning coalitions over ``n`` voters,
* :class:`WeightedGame` - ``[q; w_1, ..., w_n]`` with exact rationals,
* :class:`VectorGame` - a complete game given by class sizes and its
  shift-minimal winning type vectors,
* :class:`Combination` - an AND/OR tree of games on the same voters.

Coalitions are int bitmasks (see :mod:`votedim.bits`). Operations that need
the whole truth table enumerate all ``2**n`` coalitions and refuse inputs
above ``cap`` voters instead of silently running for hours.
"""

from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence, Union

import numpy as np

from . import bits

DEFAULT_CAP = 24


class SizeCapExceeded(ValueError):
    """An exhaustive operation was asked to handle too many voters."""


def _frac(x) -> Fraction:
    if isinstance(x, bool):
        raise TypeError("booleans are not weights")
    if isinstance(x, float):
        raise TypeError("floating point weights are not accepted; use Fraction or str")
    return Fraction(x)


@dataclass(frozen=True)
class ExplicitGame:
    n: int
    min_winning: tuple[int, ...]

    def __post_init__(self):
        if not 0 < self.n <= bits.MAX_VOTERS:
            raise ValueError(f"voter count {self.n} outside 1..{bits.MAX_VOTERS}")
        mw = tuple(self.min_winning)
        for m in mw:
            bits.check(m, self.n)
        object.__setattr__(self, "min_winning", mw)


@dataclass(frozen=True)
class WeightedGame:
    quota: Fraction
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "quota", _frac(self.quota))
        object.__setattr__(self, "weights", tuple(_frac(w) for w in self.weights))
        if not 0 < len(self.weights) <= bits.MAX_VOTERS:
            raise ValueError("weighted game needs 1..128 weights")

    @property
    def n(self) -> int:
        return len(self.weights)

    def integral(self) -> tuple[int, tuple[int, ...]]:
        """Equivalent integer quota and weights (common denominator cleared)."""
        den = self.quota.denominator
        for w in self.weights:
            den = den * w.denominator // gcd(den, w.denominator)
        return int(self.quota * den), tuple(int(w * den) for w in self.weights)

    def __str__(self) -> str:
        return f"[{self.quota}; " + ",".join(str(w) for w in self.weights) + "]"


@dataclass(frozen=True)
class VectorGame:
    """Complete game in class/vector form.

    Class ``h`` (1-based, most desirable first) consists of the voters
    ``voters[s_h : s_h + class_sizes[h-1]]``; by default voters are assigned
    to classes in index order.
    """

    class_sizes: tuple[int, ...]
    shift_min_winning: tuple[tuple[int, ...], ...]
    voters: tuple[int, ...] | None = None

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.class_sizes)
        vecs = tuple(sorted({tuple(int(x) for x in v) for v in self.shift_min_winning}))
        object.__setattr__(self, "class_sizes", sizes)
        object.__setattr__(self, "shift_min_winning", vecs)
        if not sizes or any(s < 1 for s in sizes):
            raise ValueError("class sizes must be positive")
        if sum(sizes) > bits.MAX_VOTERS:
            raise ValueError("too many voters")
        if self.voters is not None:
            vs = tuple(self.voters)
            if sorted(vs) != list(range(1, sum(sizes) + 1)):
                raise ValueError("voters must be a permutation of 1..n")
            if vs == tuple(range(1, sum(sizes) + 1)):
                vs = None
            object.__setattr__(self, "voters", vs)
        for v in vecs:
            if len(v) != len(sizes):
                raise ValueError(f"vector {v} has wrong length for {len(sizes)} classes")

    @property
    def n(self) -> int:
        return sum(self.class_sizes)

    @property
    def t(self) -> int:
        return len(self.class_sizes)

    @functools.cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        order = self.voters or tuple(range(1, self.n + 1))
        out, s = [], 0
        for size in self.class_sizes:
            out.append(tuple(sorted(order[s : s + size])))
            s += size
        return tuple(out)

    @functools.cached_property
    def class_masks(self) -> tuple[int, ...]:
        return tuple(bits.coalition(c) for c in self.classes)

    def type_of(self, S: int) -> tuple[int, ...]:
        return tuple((S & m).bit_count() for m in self.class_masks)

    def representative(self, m: Sequence[int]) -> int:
        """The coalition of type ``m`` made of the first members of each class."""
        S = 0
        for cls, k in zip(self.classes, m):
            for v in cls[:k]:
                S |= 1 << (v - 1)
        return S

    def is_winning(self, m: Sequence[int]) -> bool:
        for s in self.shift_min_winning:
            a = b = 0
            for x, y in zip(m, s):
                a += x
                b += y
                if a < b:
                    break
            else:
                return True
        return False


class Op(str, enum.Enum):
    AND = "and"
    OR = "or"


@dataclass(frozen=True)
class Combination:
    op: Op
    parts: tuple["Game", ...]

    def __post_init__(self):
        object.__setattr__(self, "op", Op(self.op))
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if len(parts) < 2:
            raise ValueError("a combination needs at least two parts")
        ns = {p.n for p in parts}
        if len(ns) != 1:
            raise ValueError(f"parts disagree on the voter count: {sorted(ns)}")

    @property
    def n(self) -> int:
        return self.parts[0].n

    def leaves(self) -> list["Game"]:
        out = []
        for p in self.parts:
            out.extend(p.leaves() if isinstance(p, Combination) else [p])
        return out


Game = Union[ExplicitGame, WeightedGame, VectorGame, Combination]


# -- constructors --------------------------------------------------------------


def explicit(n: int, min_winning: Iterable[Iterable[int]]) -> ExplicitGame:
    return ExplicitGame(n, tuple(bits.coalition(c, n) for c in min_winning))


def weighted(quota, weights: Iterable) -> WeightedGame:
    return WeightedGame(_frac(quota), tuple(_frac(w) for w in weights))


def AND(*parts: Game) -> Combination:
    return Combination(Op.AND, parts)


def OR(*parts: Game) -> Combination:
    return Combination(Op.OR, parts)


# -- evaluation ----------------------------------------------------------------


def evaluate(g: Game, S: int) -> int:
    bits.check(S, g.n)
    return _eval(g, S)


def _eval(g: Game, S: int) -> int:
    if isinstance(g, ExplicitGame):
        return int(any(m & S == m for m in g.min_winning))
    if isinstance(g, WeightedGame):
        return int(sum((g.weights[i - 1] for i in bits.members(S)), Fraction(0)) >= g.quota)
    if isinstance(g, VectorGame):
        return int(g.is_winning(g.type_of(S)))
    if isinstance(g, Combination):
        vals = (_eval(p, S) for p in g.parts)
        return int(all(vals)) if g.op is Op.AND else int(any(vals))
    raise TypeError(f"not a game: {g!r}")


def _require(n: int, cap: int) -> None:
    if n > cap:
        raise SizeCapExceeded(f"{n} voters exceeds the exhaustive-enumeration cap of {cap}")


def _lift(arr: np.ndarray, i: int) -> np.ndarray:
    # view of arr as (blocks, 2, 2**i): [:, 0] lacks voter i+1, [:, 1] has it
    return arr.reshape(-1, 2, 1 << i)


def _subset_sums(vals: Sequence[int], dtype=np.int64) -> np.ndarray:
    n = len(vals)
    out = np.zeros(1 << n, dtype=dtype)
    for i, v in enumerate(vals):
        if v:
            _lift(out, i)[:, 1, :] += v
    return out


@functools.lru_cache(maxsize=256)
def _truth_table(g: Game) -> np.ndarray:
    n = g.n
    if isinstance(g, ExplicitGame):
        tt = np.zeros(1 << n, dtype=bool)
        if g.min_winning:
            tt[list(g.min_winning)] = True
        for i in range(n):
            v = _lift(tt, i)
            v[:, 1, :] |= v[:, 0, :]
        return tt
    if isinstance(g, WeightedGame):
        q, w = g.integral()
        dtype = np.int64 if sum(w) < (1 << 62) else object
        return _subset_sums(w, dtype) >= q
    if isinstance(g, VectorGame):
        prefix = []
        for h in range(g.t):
            cum = 0
            for c in g.class_masks[: h + 1]:
                cum |= c
            prefix.append(_subset_sums([(cum >> i) & 1 for i in range(n)], np.int16))
        tt = np.zeros(1 << n, dtype=bool)
        for s in g.shift_min_winning:
            ok = np.ones(1 << n, dtype=bool)
            need = 0
            for h, x in enumerate(s):
                need += x
                ok &= prefix[h] >= need
            tt |= ok
        return tt
    if isinstance(g, Combination):
        tabs = [_truth_table(p) for p in g.parts]
        red = np.logical_and if g.op is Op.AND else np.logical_or
        return red.reduce(tabs)
    raise TypeError(f"not a game: {g!r}")


def truth_table(g: Game, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Boolean array indexed by coalition mask (read-only, cached)."""
    _require(g.n, cap)
    tt = _truth_table(g)
    tt.flags.writeable = False
    return tt


def is_monotone(tt: np.ndarray) -> bool:
    n = tt.size.bit_length() - 1
    for i in range(n):
        v = _lift(tt, i)
        if np.any(v[:, 0, :] & ~v[:, 1, :]):
            return False
    return True


def _minimal_from_table(tt: np.ndarray) -> tuple[int, ...]:
    n = tt.size.bit_length() - 1
    mw = tt.copy()
    for i in range(n):
        _lift(mw, i)[:, 1, :] &= ~_lift(tt, i)[:, 0, :]
    return tuple(int(x) for x in np.flatnonzero(mw))


def _maximal_from_table(tt: np.ndarray) -> tuple[int, ...]:
    n = tt.size.bit_length() - 1
    ml = ~tt
    for i in range(n):
        _lift(ml, i)[:, 0, :] &= _lift(tt, i)[:, 1, :]
    return tuple(int(x) for x in np.flatnonzero(ml))


def minimal_winning(g: Game, cap: int = DEFAULT_CAP) -> tuple[int, ...]:
    """Minimal winning coalitions in colex order."""
    if isinstance(g, ExplicitGame):
        return tuple(sorted(set(g.min_winning)))
    if isinstance(g, VectorGame):
        from .complete import minimal_winning_vectors

        _require(g.n, cap)
        return _expand_vectors(g, minimal_winning_vectors(g))
    return _minimal_from_table(truth_table(g, cap))


def maximal_losing(g: Game, cap: int = DEFAULT_CAP) -> tuple[int, ...]:
    """Maximal losing coalitions in colex order."""
    if isinstance(g, VectorGame):
        from .complete import maximal_losing_vectors

        _require(g.n, cap)
        return _expand_vectors(g, maximal_losing_vectors(g))
    return _maximal_from_table(truth_table(g, cap))


def _expand_vectors(g: VectorGame, vecs: Iterable[Sequence[int]]) -> tuple[int, ...]:
    out = []
    for m in vecs:
        choices = [itertools.combinations(c, k) for c, k in zip(g.classes, m)]
        for pick in itertools.product(*choices):
            out.append(bits.coalition(itertools.chain.from_iterable(pick)))
    return tuple(sorted(out))


def from_truth_table(tt: np.ndarray) -> ExplicitGame:
    n = tt.size.bit_length() - 1
    return ExplicitGame(n, _minimal_from_table(tt))


# -- validation ----------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    message: str
    witness: tuple = ()


def validate(g: Game, cap: int = DEFAULT_CAP) -> list[Violation]:
    """Check the invariants of a representation; an empty list means valid."""
    out: list[Violation] = []
    if isinstance(g, ExplicitGame):
        if not g.min_winning:
            out.append(Violation("no minimal winning coalition: the grand coalition would lose"))
        if 0 in g.min_winning:
            out.append(Violation("the empty coalition is winning", ((),)))
        mw = sorted(set(g.min_winning))
        if len(mw) != len(g.min_winning):
            out.append(Violation("duplicate minimal winning coalitions"))
        for a, b in itertools.permutations(mw, 2):
            if a & b == a:
                out.append(Violation("minimal winning coalitions are not an antichain",
                                     (bits.members(a), bits.members(b))))
                break
    elif isinstance(g, WeightedGame):
        if g.quota <= 0:
            out.append(Violation("quota must be positive (the empty coalition would win)", ((),)))
        neg = [i + 1 for i, w in enumerate(g.weights) if w < 0]
        if neg:
            out.append(Violation("negative weights", tuple(neg)))
        if sum(g.weights, Fraction(0)) < g.quota:
            out.append(Violation("the grand coalition is losing", (tuple(range(1, g.n + 1)),)))
    elif isinstance(g, VectorGame):
        out.extend(_validate_vector(g))
    elif isinstance(g, Combination):
        for p in g.leaves():
            out.extend(validate(p, cap))
    else:
        raise TypeError(f"not a game: {g!r}")
    return out


def _validate_vector(g: VectorGame) -> list[Violation]:
    from .complete import dominates, strict_adjacent_classes

    out = []
    if not g.shift_min_winning:
        out.append(Violation("no shift-minimal winning vector"))
    for v in g.shift_min_winning:
        if any(x < 0 or x > s for x, s in zip(v, g.class_sizes)):
            out.append(Violation("vector outside class bounds", (v,)))
        if not any(v):
            out.append(Violation("the zero vector is winning", (v,)))
    for a, b in itertools.permutations(g.shift_min_winning, 2):
        if dominates(a, b):
            out.append(Violation("shift-minimal vectors are not an antichain", (a, b)))
            break
    if not out:
        for h, strict in enumerate(strict_adjacent_classes(g), start=1):
            if not strict:
                out.append(Violation(f"classes {h} and {h + 1} are equally desirable", (h, h + 1)))
    return out


# -- desirability --------------------------------------------------------------


class Rel(str, enum.Enum):
    ABOVE = ">"  # strictly more desirable
    EQUIV = "="
    BELOW = "<"
    INCOMPARABLE = "|"


@dataclass(frozen=True)
class DesirabilityReport:
    relation: tuple[tuple[Rel, ...], ...]  # relation[i-1][j-1] compares voter i with j
    equivalence: tuple[tuple[int, ...], ...]  # classes of mutually equivalent voters, by least member
    classes: tuple[tuple[int, ...], ...] | None  # ordered by desirability when complete

    @property
    def complete(self) -> bool:
        return self.classes is not None

    def rel(self, i: int, j: int) -> Rel:
        return self.relation[i - 1][j - 1]


def _pair_relation(tt: np.ndarray, n: int, i: int, j: int) -> tuple[bool, bool]:
    """(i >= j, j >= i) for 1-based voters, from the truth table."""
    cube = tt.reshape((2,) * n)
    ai, aj = n - i, n - j  # axis of voter k is n - k (C order, bit k-1)
    idx_i = [slice(None)] * n
    idx_j = [slice(None)] * n
    idx_i[ai], idx_i[aj] = 1, 0  # has i, lacks j
    idx_j[ai], idx_j[aj] = 0, 1
    with_i = cube[tuple(idx_i)]
    with_j = cube[tuple(idx_j)]
    return bool(np.all(with_i >= with_j)), bool(np.all(with_j >= with_i))


def desirability(g: Game, cap: int = DEFAULT_CAP) -> DesirabilityReport:
    n = g.n
    if isinstance(g, VectorGame):
        cls = {v: h for h, c in enumerate(g.classes) for v in c}
        rel = tuple(
            tuple(Rel.EQUIV if cls[i] == cls[j] else (Rel.ABOVE if cls[i] < cls[j] else Rel.BELOW)
                  for j in range(1, n + 1))
            for i in range(1, n + 1)
        )
        equiv = tuple(sorted(g.classes))
        return DesirabilityReport(rel, equiv, tuple(g.classes))
    tt = truth_table(g, cap)
    ge = [[True] * n for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            a, b = _pair_relation(tt, n, i, j)
            ge[i - 1][j - 1], ge[j - 1][i - 1] = a, b
    rel = []
    for i in range(n):
        row = []
        for j in range(n):
            a, b = ge[i][j], ge[j][i]
            row.append(Rel.EQUIV if a and b else Rel.ABOVE if a else Rel.BELOW if b else Rel.INCOMPARABLE)
        rel.append(tuple(row))
    seen: set[int] = set()
    equiv = []
    for i in range(n):
        if i in seen:
            continue
        c = tuple(j + 1 for j in range(n) if ge[i][j] and ge[j][i])
        seen.update(v - 1 for v in c)
        equiv.append(c)
    complete = all(ge[i][j] or ge[j][i] for i in range(n) for j in range(n))
    classes = None
    if complete:
        # the number of voters a class strictly dominates orders a total preorder
        classes = tuple(sorted(equiv, key=lambda c: (-sum(not ge[j][c[0] - 1] for j in range(n)), c)))
    return DesirabilityReport(tuple(rel), tuple(equiv), classes)


def is_complete(g: Game, cap: int = DEFAULT_CAP) -> tuple[bool, tuple[tuple[int, ...], ...] | None]:
    rep = desirability(g, cap)
    return rep.complete, rep.classes


def equivalence_classes(g: Game, cap: int = DEFAULT_CAP) -> tuple[tuple[int, ...], ...]:
    """Classes ordered by desirability when complete, else by least member."""
    rep = desirability(g, cap)
    return rep.classes if rep.complete else rep.equivalence


# -- duality, equality, null voters --------------------------------------------


def dual(g: Game, cap: int = DEFAULT_CAP) -> Game:
    """The game ``S -> 1 - g(N \\ S)``."""
    if isinstance(g, WeightedGame):
        q, w = g.integral()
        return WeightedGame(Fraction(sum(w) - q + 1), tuple(Fraction(x) for x in w))
    if isinstance(g, ExplicitGame):
        N = bits.full(g.n)
        return ExplicitGame(g.n, tuple(sorted(N ^ T for T in maximal_losing(g, cap))))
    if isinstance(g, VectorGame):
        from .complete import shift_max_losing_vectors

        vecs = [tuple(s - x for s, x in zip(g.class_sizes, v)) for v in shift_max_losing_vectors(g)]
        return VectorGame(g.class_sizes, tuple(vecs), g.voters)
    if isinstance(g, Combination):
        return Combination(Op.OR if g.op is Op.AND else Op.AND, tuple(dual(p, cap) for p in g.parts))
    raise TypeError(f"not a game: {g!r}")


def _symmetric_under(g: Game, masks: Sequence[int]) -> bool:
    if isinstance(g, VectorGame):
        return all(any(m & c == m for c in g.class_masks) for m in masks)
    if isinstance(g, WeightedGame):
        return all(len({g.weights[i - 1] for i in bits.members(m)}) <= 1 for m in masks)
    if isinstance(g, Combination):
        return all(_symmetric_under(p, masks) for p in g.parts)
    return False


VECTOR_SCAN_BUDGET = 10**7


def games_equal(a: Game, b: Game, cap: int = DEFAULT_CAP) -> bool:
    """Functional equality.

    Two explicit games compare canonical antichains. When one side is a
    :class:`VectorGame` and both sides are invariant under permutations
    inside its classes, the comparison runs over type vectors, which keeps
    large symmetric games tractable. Everything else compares truth tables.
    """
    if a.n != b.n:
        return False
    if isinstance(a, ExplicitGame) and isinstance(b, ExplicitGame):
        return sorted(set(a.min_winning)) == sorted(set(b.min_winning))
    for v in (a, b):
        if isinstance(v, VectorGame) and _symmetric_under(a, v.class_masks) and _symmetric_under(b, v.class_masks):
            count = 1
            for s in v.class_sizes:
                count *= s + 1
            if count <= VECTOR_SCAN_BUDGET and (count < (1 << v.n) or v.n > cap):
                for m in itertools.product(*(range(s + 1) for s in v.class_sizes)):
                    S = v.representative(m)
                    if _eval(a, S) != _eval(b, S):
                        return False
                return True
    _require(a.n, cap)
    return bool(np.array_equal(truth_table(a, cap), truth_table(b, cap)))


def add_null_voters(g: Game, k: int) -> Game:
    """Append ``k`` voters whose presence never changes an outcome."""
    if k < 0 or g.n + k > bits.MAX_VOTERS:
        raise ValueError(f"cannot add {k} null voters to {g.n} voters (capacity {bits.MAX_VOTERS})")
    if k == 0:
        return g
    if isinstance(g, ExplicitGame):
        return ExplicitGame(g.n + k, g.min_winning)
    if isinstance(g, WeightedGame):
        return WeightedGame(g.quota, g.weights + (Fraction(0),) * k)
    if isinstance(g, VectorGame):
        voters = (g.voters or tuple(range(1, g.n + 1))) + tuple(range(g.n + 1, g.n + k + 1))
        if all(v[-1] == 0 for v in g.shift_min_winning):
            # the last class is already null: grow it
            sizes = g.class_sizes[:-1] + (g.class_sizes[-1] + k,)
            return VectorGame(sizes, g.shift_min_winning, voters)
        vecs = tuple(v + (0,) for v in g.shift_min_winning)
        return VectorGame(g.class_sizes + (k,), vecs, voters)
    if isinstance(g, Combination):
        return Combination(g.op, tuple(add_null_voters(p, k) for p in g.parts))
    raise TypeError(f"not a game: {g!r}")


def count_type(class_sizes: Sequence[int], m: Sequence[int]) -> int:
    """Number of coalitions of type ``m``."""
    out = 1
    for s, x in zip(class_sizes, m):
        out *= comb(s, x)
    return out
