"""Complete simple games in vector form.

Type vectors count how many members a coalition has in each equivalence
class, most desirable class first. ``a`` dominates ``b`` when every prefix
sum of ``a`` is at least the matching prefix sum of ``b``; winning vectors
are closed upward under domination. In a box ``0 <= m_h <= n_h`` the
domination order is generated by two kinds of covering steps: dropping one
voter (``m - e_h``) and shifting one voter to the next weaker class
(``m - e_h + e_{h+1}``). Shift-extremal vectors are found by checking just
those neighbours.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterable, Iterator, Sequence

from .games import (
    DEFAULT_CAP,
    ExplicitGame,
    Game,
    SizeCapExceeded,
    VectorGame,
    is_complete,
    minimal_winning,
    truth_table,
)

Vector = tuple[int, ...]

SCAN_BUDGET = 10**7


class NotComplete(ValueError):
    pass


def dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        raise ValueError(f"vectors of different length: {tuple(a)} vs {tuple(b)}")
    sa = sb = 0
    for x, y in zip(a, b):
        sa += x
        sb += y
        if sa < sb:
            return False
    return True


def _check_bounds(sizes: Sequence[int], m: Sequence[int]) -> None:
    if len(m) != len(sizes) or any(x < 0 or x > s for x, s in zip(m, sizes)):
        raise ValueError(f"vector {tuple(m)} outside the class bounds {tuple(sizes)}")


def is_winning_vector(g: VectorGame, m: Sequence[int]) -> bool:
    _check_bounds(g.class_sizes, m)
    return g.is_winning(m)


def box(sizes: Sequence[int], budget: int = SCAN_BUDGET) -> Iterator[Vector]:
    """All type vectors in lexicographic order."""
    count = 1
    for s in sizes:
        count *= s + 1
    if count > budget:
        raise SizeCapExceeded(f"{count} type vectors exceed the scan budget {budget}")
    return itertools.product(*(range(s + 1) for s in sizes))


def _predecessors(m: Vector, sizes: Sequence[int]) -> Iterator[Vector]:
    t = len(m)
    for h in range(t):
        if m[h] == 0:
            continue
        down = list(m)
        down[h] -= 1
        yield tuple(down)
        if h + 1 < t and m[h + 1] < sizes[h + 1]:
            down[h + 1] += 1
            yield tuple(down)


def _successors(m: Vector, sizes: Sequence[int]) -> Iterator[Vector]:
    t = len(m)
    for h in range(t):
        if m[h] == sizes[h]:
            continue
        up = list(m)
        up[h] += 1
        yield tuple(up)
        if h + 1 < t and m[h + 1] > 0:
            up[h + 1] -= 1
            yield tuple(up)


def _winning_table(sizes: Sequence[int], winning, budget: int) -> dict[Vector, bool]:
    return {m: winning(m) for m in box(sizes, budget)}


def _extremal(sizes: Sequence[int], table: dict[Vector, bool]) -> tuple[list[Vector], list[Vector]]:
    smin = [m for m, w in table.items() if w and not any(table[p] for p in _predecessors(m, sizes))]
    smax = [m for m, w in table.items() if not w and all(table[s] for s in _successors(m, sizes))]
    return sorted(smin), sorted(smax)


@functools.lru_cache(maxsize=64)
def _scan(g: VectorGame, budget: int) -> tuple[dict[Vector, bool], tuple, tuple]:
    table = _winning_table(g.class_sizes, g.is_winning, budget)
    smin, smax = _extremal(g.class_sizes, table)
    return table, tuple(smin), tuple(smax)


def shift_extremal(g: VectorGame, budget: int = SCAN_BUDGET) -> tuple[list[Vector], list[Vector]]:
    """Shift-minimal winning and shift-maximal losing vectors, by a full scan."""
    _, smin, smax = _scan(g, budget)
    return list(smin), list(smax)


def shift_max_losing_vectors(g: VectorGame, budget: int = SCAN_BUDGET) -> list[Vector]:
    return shift_extremal(g, budget)[1]


def minimal_winning_vectors(g: VectorGame, budget: int = SCAN_BUDGET) -> list[Vector]:
    """Winning vectors whose every single-voter removal loses (types of minimal winning coalitions)."""
    table = _scan(g, budget)[0]
    out = []
    for m, w in table.items():
        if not w:
            continue
        if all(not table[m[:h] + (m[h] - 1,) + m[h + 1 :]] for h in range(len(m)) if m[h]):
            out.append(m)
    return sorted(out)


def maximal_losing_vectors(g: VectorGame, budget: int = SCAN_BUDGET) -> list[Vector]:
    """Losing vectors whose every single-voter addition wins (types of maximal losing coalitions)."""
    table = _scan(g, budget)[0]
    sizes = g.class_sizes
    out = []
    for m, w in table.items():
        if w:
            continue
        if all(table[m[:h] + (m[h] + 1,) + m[h + 1 :]] for h in range(len(m)) if m[h] < sizes[h]):
            out.append(m)
    return sorted(out)


def strict_adjacent_classes(g: VectorGame) -> list[bool]:
    """For each pair of adjacent classes, whether the upper one is strictly more desirable.

    With an antichain of shift-minimal vectors, class ``h`` beats ``h + 1``
    exactly when some shift-minimal vector uses class ``h`` and leaves room
    in class ``h + 1``.
    """
    sizes = g.class_sizes
    return [
        any(s[h] >= 1 and s[h + 1] < sizes[h + 1] for s in g.shift_min_winning)
        for h in range(g.t - 1)
    ]


def from_shift_max_losing(class_sizes: Sequence[int], losing: Iterable[Sequence[int]],
                          budget: int = SCAN_BUDGET) -> VectorGame:
    """The complete game whose losing vectors are those dominated by some vector in ``losing``."""
    sizes = tuple(class_sizes)
    L = sorted({tuple(v) for v in losing})
    if not L:
        raise ValueError("need at least one shift-maximal losing vector")
    for v in L:
        _check_bounds(sizes, v)
    for a, b in itertools.permutations(L, 2):
        if dominates(a, b):
            raise ValueError(f"losing vectors are not an antichain: {a} dominates {b}")
    if sizes in L:
        raise ValueError("inconsistent input: the grand coalition would be losing")

    def winning(m):
        return not any(dominates(l, m) for l in L)

    table = _winning_table(sizes, winning, budget)
    smin, smax = _extremal(sizes, table)
    if smax != L:
        raise ValueError(f"losing vectors are not shift-maximal in the resulting game: {L} vs {smax}")
    return VectorGame(sizes, tuple(smin))


def from_oracle(g: Game, cap: int = DEFAULT_CAP, budget: int = SCAN_BUDGET) -> VectorGame:
    """Vector form of a complete game (classes from the desirability relation)."""
    if isinstance(g, VectorGame):
        return g
    ok, classes = is_complete(g, cap)
    if not ok:
        raise NotComplete("the game is not complete")
    sizes = tuple(len(c) for c in classes)
    voters = tuple(v for c in classes for v in c)
    shell = VectorGame(sizes, (), voters)
    tt = truth_table(g, cap)
    table = {m: bool(tt[shell.representative(m)]) for m in box(sizes, budget)}
    smin, _ = _extremal(sizes, table)
    return VectorGame(sizes, tuple(smin), voters)


def expand(g: VectorGame, cap: int = DEFAULT_CAP) -> ExplicitGame:
    """Explicit form: all coalitions whose type is minimal winning."""
    return ExplicitGame(g.n, minimal_winning(g, cap))


# -- two types of voters -------------------------------------------------------


def _antichains(elems: Sequence[Vector]) -> Iterator[tuple[Vector, ...]]:
    comparable = [
        [dominates(a, b) or dominates(b, a) for b in elems] for a in elems
    ]

    def rec(i: int, chosen: list[int]):
        if i == len(elems):
            if chosen:
                yield tuple(elems[k] for k in chosen)
            return
        yield from rec(i + 1, chosen)
        if not any(comparable[i][k] for k in chosen):
            chosen.append(i)
            yield from rec(i + 1, chosen)
            chosen.pop()

    yield from rec(0, [])


def enumerate_t2(n: int, cap: int = 10) -> list[VectorGame]:
    """All complete games on ``n`` voters with exactly two types, in canonical form.

    Canonical form: the stronger class first, voters assigned in index
    order. Distinct outputs are non-isomorphic games.
    """
    if n > cap:
        raise SizeCapExceeded(f"enumeration for n={n} exceeds the cap {cap}")
    out = []
    for n1 in range(1, n):
        sizes = (n1, n - n1)
        elems = [m for m in box(sizes) if any(m)]
        for ac in _antichains(elems):
            g = VectorGame(sizes, ac)
            if all(strict_adjacent_classes(g)):
                out.append(g)
    return out


def fib(k: int) -> int:
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def count_formula_t2(n: int, offset: int = 0) -> int:
    """The published closed form ``Fib(n + 6 + offset) - (n^2 - 4n + 8)`` with Fib(1) = Fib(2) = 1."""
    return fib(n + 6 + offset) - (n * n - 4 * n + 8)


def count_t2(n: int) -> int:
    """Number of complete games with two types on ``n >= 2`` voters.

    Matches :func:`enumerate_t2` for n = 2..9. It differs from
    :func:`count_formula_t2` only in the sign of the linear term; no
    Fibonacci index shift reconciles the two.
    """
    return fib(n + 6) - (n * n + 4 * n + 8)


def calibrate_offset(counts: dict[int, int], offsets: Iterable[int] = range(-4, 5)) -> int | None:
    """The single offset making :func:`count_formula_t2` match every count, if one exists."""
    for off in offsets:
        if all(count_formula_t2(n, off) == c for n, c in counts.items()):
            return off
    return None
