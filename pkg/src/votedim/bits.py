"""Coalitions as Python ints: voter ``i`` (1-based) is bit ``i - 1``.

Sorting masks numerically gives colex order on the underlying sets, which is
the canonical ordering used for every coalition list in the package.
"""

from __future__ import annotations

from typing import Iterable

MAX_VOTERS = 128


def coalition(members: Iterable[int], n: int | None = None) -> int:
    mask = 0
    for i in members:
        if i < 1 or (n is not None and i > n) or i > MAX_VOTERS:
            raise ValueError(f"voter index {i} out of range")
        mask |= 1 << (i - 1)
    return mask


def members(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def full(n: int) -> int:
    return (1 << n) - 1


def size(mask: int) -> int:
    return mask.bit_count()


def check(mask: int, n: int) -> None:
    if mask < 0 or mask >> n:
        raise ValueError(f"coalition {members(mask)} does not fit {n} voters")


def fmt(mask: int) -> str:
    return "{" + ",".join(map(str, members(mask))) + "}"
