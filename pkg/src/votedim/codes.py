"""Binary constant-weight codes.

Words are tuples of 0/1 of length ``n``; internally bitmasks with position
``i`` (0-based) at bit ``i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .clique import max_clique
from .games import SizeCapExceeded

BRUTE_FORCE_CAP = 5000


def _word(mask: int, n: int) -> tuple[int, ...]:
    return tuple((mask >> i) & 1 for i in range(n))


def _mask(word) -> int:
    return sum(1 << i for i, b in enumerate(word) if b)


def hamming(a, b) -> int:
    return sum(x != y for x, y in zip(a, b))


@dataclass(frozen=True)
class ConstantWeightCode:
    n: int
    w: int
    codewords: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "codewords", tuple(tuple(c) for c in self.codewords))
        for c in self.codewords:
            if len(c) != self.n or sum(c) != self.w or set(c) - {0, 1}:
                raise ValueError(f"{c} is not a binary word of length {self.n} and weight {self.w}")

    @property
    def size(self) -> int:
        return len(self.codewords)

    @property
    def min_distance(self) -> int | None:
        """Smallest pairwise distance; ``None`` for fewer than two words."""
        ds = [hamming(a, b) for a, b in itertools.combinations(self.codewords, 2)]
        return min(ds) if ds else None

    def supports(self) -> list[tuple[int, ...]]:
        """0-based positions of the ones in each codeword."""
        return [tuple(i for i, b in enumerate(c) if b) for c in self.codewords]

    def truncated(self, d: int) -> "ConstantWeightCode":
        return ConstantWeightCode(self.n, self.w, self.codewords[:d])


def weight_words(n: int, w: int) -> list[int]:
    """All weight-``w`` masks of length ``n`` in colex order."""
    return sorted(sum(1 << i for i in c) for c in itertools.combinations(range(n), w))


def graham_sloane_code(n: int, w: int) -> ConstantWeightCode:
    """Weight-``w`` words with the most common value of ``sum(i * c_i) mod n``.

    Positions are 0-based. Two distinct words of equal weight at distance 2
    differ by moving one 1, which changes the residue, so every residue
    class has minimum distance at least 4 and the largest has at least
    ``C(n, w) / n`` words. Ties go to the smallest residue.
    """
    if not 0 <= w <= n or n < 1:
        raise ValueError(f"need 0 <= w <= n and n >= 1, got n={n}, w={w}")
    buckets: dict[int, list[int]] = {}
    for m in weight_words(n, w):
        r = sum(i for i in range(n) if m >> i & 1) % n
        buckets.setdefault(r, []).append(m)
    r = min(buckets, key=lambda k: (-len(buckets[k]), k))
    return ConstantWeightCode(n, w, tuple(_word(m, n) for m in buckets[r]))


def brute_force_A(n: int, d: int, w: int) -> int:
    """Exact ``A(n, d; w)`` by maximum clique on the distance-at-least-``d`` graph."""
    if not 0 <= w <= n:
        raise ValueError(f"need 0 <= w <= n, got n={n}, w={w}")
    if comb(n, w) > BRUTE_FORCE_CAP:
        raise SizeCapExceeded(f"C({n},{w}) = {comb(n, w)} words exceed the cap {BRUTE_FORCE_CAP}")
    words = weight_words(n, w)
    adj = [0] * len(words)
    for i, a in enumerate(words):
        for j in range(i + 1, len(words)):
            if (a ^ words[j]).bit_count() >= d:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    clique, exact = max_clique(adj, exact_limit=BRUTE_FORCE_CAP)
    assert exact
    return len(clique)
