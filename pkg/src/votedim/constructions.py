"""Concrete games and families with known dimension bounds."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import bits
from .codes import ConstantWeightCode, graham_sloane_code, weight_words
from .complete import from_shift_max_losing
from .games import AND, OR, ExplicitGame, Game, VectorGame, WeightedGame, explicit, weighted
from .weightedness import TradingTransform


@dataclass
class FamilyBundle:
    game: VectorGame
    losing_family: list[int]
    certificates: list[TradingTransform]
    claimed_lower_bound: int
    upper_witness: list[WeightedGame] | None = None
    params: dict = field(default_factory=dict)
    code: ConstantWeightCode | None = None


def example_game(which) -> Game:
    """``1``: two disjoint pairs; ``2``: the two-class complete game; ``"lisbon-shape"``.

    The ``"lisbon-shape"`` game only shows the formula shape ``(v1 and v2) or v3``;
    its three weighted leaves are placeholders on three voters, not real data.
    """
    if which in (1, "1", "example1"):
        return explicit(4, [[1, 2], [3, 4]])
    if which in (2, "2", "example2"):
        return VectorGame((2, 4), ((2, 0), (0, 4)))
    if which == "lisbon-shape":
        v1, v2, v3 = (weighted(1, [int(i == k) for i in range(3)]) for k in range(3))
        return OR(AND(v1, v2), v3)
    raise ValueError(f"unknown example {which!r}")


def example1_certificate() -> TradingTransform:
    return TradingTransform.of([[1, 2], [3, 4]], [[1, 3], [2, 4]])


def example2_certificate() -> TradingTransform:
    return TradingTransform.of([[1, 2], [3, 4, 5, 6]], [[1, 3, 4], [2, 5, 6]])


def example_representations(which) -> tuple[Game, Game]:
    """The published intersection and union forms of examples 1 and 2."""
    if which in (1, "1"):
        return (AND(weighted(2, [1, 1, 2, 0]), weighted(2, [1, 1, 0, 2])),
                OR(weighted(2, [1, 1, 0, 0]), weighted(2, [0, 0, 1, 1])))
    if which in (2, "2"):
        return (AND(weighted(8, [5, 3, 2, 2, 2, 2]), weighted(8, [3, 5, 2, 2, 2, 2])),
                OR(weighted(2, [1, 1, 0, 0, 0, 0]), weighted(4, [1, 1, 1, 1, 1, 1])))
    raise ValueError(f"unknown example {which!r}")


PROP_NE_LOSING = (4, 4, 4, 4)


def prop_ne_game(class_size: int = 20, check: bool = False) -> VectorGame:
    """Four classes of equal size with the single shift-maximal losing vector (4,4,4,4).

    ``check=True`` demands the class size needed for the winning vectors
    (0,9,0,0) and (0,0,0,17) used to show ordered weights fail.
    """
    need = 17 if check else 5
    if class_size < need:
        raise ValueError(f"class size must be at least {need}, got {class_size}")
    return from_shift_max_losing((class_size,) * 4, [PROP_NE_LOSING])


def prop_ne_coalition(g: VectorGame) -> int:
    """The first four voters of every class."""
    return g.representative(PROP_NE_LOSING)


def parametric_bundle(d: int, n2: int | None = None) -> FamilyBundle:
    """Two classes ``N1 = {1..d}``, ``N2`` of size ``n2``; shift-minimal (2,0) and (0,4).

    Upper witness: for each ``i`` the game with quota 8, weight 3 on ``i``,
    5 on the rest of ``N1`` and 2 on ``N2``. Lower bound: the losing
    coalitions ``{i, d+2i-1, d+2i}`` pairwise admit length-2 certificates.
    """
    n2 = 2 * d if n2 is None else n2
    if d < 2 or n2 < 2 * d:
        raise ValueError(f"need d >= 2 and n2 >= 2d, got d={d}, n2={n2}")
    g = VectorGame((d, n2), ((2, 0), (0, 4)))
    n = d + n2
    witness = []
    for i in range(1, d + 1):
        w = [3 if j == i else 5 if j <= d else 2 for j in range(1, n + 1)]
        witness.append(weighted(8, w))
    T = [bits.coalition([i, d + 2 * i - 1, d + 2 * i]) for i in range(1, d + 1)]
    certs = []
    for i, j in itertools.combinations(range(1, d + 1), 2):
        X = [bits.coalition([i, j]), bits.coalition([d + 2 * i - 1, d + 2 * i, d + 2 * j - 1, d + 2 * j])]
        certs.append(TradingTransform(tuple(X), (T[i - 1], T[j - 1])))
    return FamilyBundle(g, T, certs, d, witness, {"d": d, "n2": n2})


def theorem_bundle(k: int, target: int | None = None) -> FamilyBundle:
    """Two classes of size ``2k`` with shift-minimal (k,0) and (0,2k), and a code-based losing family.

    ``C2`` is the Graham-Sloane code of weight ``k`` in length ``2k`` (distance
    at least 4); ``C1`` takes the first weight-``(k-1)`` words in colex order.
    ``T_i`` joins the ``i``-th words of both, placed in ``N1`` and ``N2``.
    """
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    if target is not None and target < 1:
        raise ValueError("target must be positive")
    m = 2 * k
    g = VectorGame((m, m), ((k, 0), (0, m)))
    c2 = graham_sloane_code(m, k)
    d = c2.size if target is None else min(c2.size, target)
    c2 = c2.truncated(d)
    c1 = weight_words(m, k - 1)
    if len(c1) < d:
        raise ValueError("not enough weight k-1 words")
    T1 = c1[:d]
    T2 = [bits.coalition(m + p + 1 for p in s) for s in c2.supports()]
    T = [a | b for a, b in zip(T1, T2)]
    certs = []
    for i, j in itertools.combinations(range(d), 2):
        a = (T1[i] & ~T1[j]) & -(T1[i] & ~T1[j])
        spare = T2[j] & ~T2[i]
        b = spare & -spare
        b |= (spare ^ b) & -(spare ^ b)
        X1 = (T[i] & ~a) | b
        X2 = (T[j] & ~b) | a
        certs.append(TradingTransform((X1, X2), (T[i], T[j])))
    return FamilyBundle(g, T, certs, d, None, {"k": k, "target": target}, c2)
