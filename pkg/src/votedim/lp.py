"""Exact rational feasibility engine for separating coalitions by a weighted game.

The primal system over ``x = (w_1, ..., w_n, q) >= 0`` is::

    w(A) - q >= 0      for every accepted coalition A
    q - w(R) >= 1      for every rejected coalition R
    w_i - w_j >= 0     for every order pair (i, j)

A strict separator can always be rescaled to a gap of one, so the ``>= 1``
normalisation loses nothing. The system is solved through its Farkas
alternative::

    max  sum_k b_k y_k   s.t.   sum_k y_k M_k <= 0,   sum_k b_k y_k <= 1,   y >= 0

with a revised simplex kept in fraction-free integer form and Bland's rule.
The optimum is 1 exactly when the primal is infeasible, and then ``y`` is a
Farkas certificate. Otherwise the optimum is 0 and the simplex multipliers
are a primal solution. Primal constraints enter as columns on demand, so
lazily generated constraints keep the current basis feasible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Sequence

from . import bits

# violated accept coalitions for integer weights/quota: [(violation, mask), ...]
AcceptOracle = Callable[[Sequence[int], int], list[tuple[int, int]]]


@dataclass
class SeparationProblem:
    """Accept/reject constraints for one weighted game over ``n`` voters.

    ``accept`` lists coalitions that must reach the quota. When the list is
    too large to materialise, ``accept_oracle`` reports violated accepted
    coalitions for candidate integer weights instead; both may be given.
    ``order`` holds 1-based pairs ``(i, j)`` meaning ``w_i >= w_j``.
    """

    n: int
    accept: Sequence[int] = ()
    reject: Sequence[int] = ()
    order: Sequence[tuple[int, int]] = ()
    accept_oracle: AcceptOracle | None = None


@dataclass(frozen=True)
class RationalSolution:
    weights: tuple[Fraction, ...]
    quota: Fraction

    def integral(self) -> tuple[int, tuple[int, ...]]:
        """Quota and weights scaled to coprime integers."""
        vals = (self.quota,) + self.weights
        den = 1
        for v in vals:
            den = den * v.denominator // gcd(den, v.denominator)
        ints = [int(v * den) for v in vals]
        g = 0
        for v in ints:
            g = gcd(g, v)
        g = g or 1
        return ints[0] // g, tuple(v // g for v in ints[1:])

    def game(self):
        from .games import WeightedGame

        q, w = self.integral()
        return WeightedGame(Fraction(q), tuple(Fraction(x) for x in w))

    def satisfies(self, problem: SeparationProblem) -> bool:
        """Exact re-substitution against every explicitly listed constraint."""
        w, q = self.weights, self.quota
        if any(x < 0 for x in w) or q <= 0:
            return False

        def weight(mask: int) -> Fraction:
            return sum((w[i - 1] for i in bits.members(mask)), Fraction(0))

        if any(weight(a) < q for a in problem.accept):
            return False
        if any(weight(r) > q - 1 for r in problem.reject):
            return False
        if any(w[i - 1] < w[j - 1] for i, j in problem.order):
            return False
        if problem.accept_oracle is not None:
            qi, wi = self.integral()
            if problem.accept_oracle(wi, qi):
                return False
        return True


@dataclass(frozen=True)
class Infeasible:
    """Farkas multipliers proving that no separating weighted game exists.

    ``accept``/``reject`` map coalition masks to their multipliers and
    ``order`` maps voter pairs. Instances are falsy so that
    ``if lp_feasible(problem):`` reads naturally.
    """

    n: int
    accept: dict[int, Fraction] = field(default_factory=dict)
    reject: dict[int, Fraction] = field(default_factory=dict)
    order: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return False

    def check(self) -> bool:
        """Verify the Farkas conditions exactly."""
        coeff = [Fraction(0)] * (self.n + 1)
        for mask, y in self.accept.items():
            for i in bits.members(mask):
                coeff[i - 1] += y
            coeff[self.n] -= y
        for mask, y in self.reject.items():
            for i in bits.members(mask):
                coeff[i - 1] -= y
            coeff[self.n] += y
        for (i, j), y in self.order.items():
            coeff[i - 1] += y
            coeff[j - 1] -= y
        ys = list(self.accept.values()) + list(self.reject.values()) + list(self.order.values())
        return (
            all(y >= 0 for y in ys)
            and all(c <= 0 for c in coeff)
            and sum(self.reject.values(), Fraction(0)) > 0
        )


class _FarkasSimplex:
    # rows 0..n-1: w_i, row n: q, row n+1: normalisation of sum b_k y_k

    def __init__(self, n: int):
        self.n = n
        m = n + 2
        self.m = m
        self.D = 1
        self.R = [[int(i == j) for j in range(m)] for i in range(m)]
        self.rhs = [0] * (m - 1) + [1]
        self.obj = [0] * m
        self.z = 0
        self.cols: list[tuple[tuple[tuple[int, int], ...], int]] = [(((j, 1),), 0) for j in range(m)]
        self.tags: list[tuple[str, object] | None] = [None] * m
        self.basis = list(range(m))
        self.in_basis = set(self.basis)
        self.known: set[tuple[str, object]] = set()
        self.pivots = 0

    def add(self, kind: str, key, entries: Iterable[tuple[int, int]], rhs: int) -> bool:
        tag = (kind, key)
        if tag in self.known:
            return False
        self.known.add(tag)
        ent = [(r, c) for r, c in entries if c]
        if rhs:
            ent.append((self.m - 1, rhs))
        self.cols.append((tuple(ent), rhs))
        self.tags.append(tag)
        return True

    def optimize(self) -> None:
        R, obj = self.R, self.obj
        while True:
            D = self.D
            enter = -1
            beta = 0
            for k in range(len(self.cols)):
                if k in self.in_basis:
                    continue
                ent, cost = self.cols[k]
                rc = -cost * D
                for r, c in ent:
                    rc += obj[r] * c
                if rc < 0:
                    enter, beta = k, rc
                    break
            if enter < 0:
                return
            ent = self.cols[enter][0]
            alpha = [sum(row[r] * c for r, c in ent) for row in R]
            rhs = self.rhs
            best = -1
            for i, a in enumerate(alpha):
                if a <= 0:
                    continue
                if best < 0:
                    best = i
                    continue
                lhs, rgt = rhs[i] * alpha[best], rhs[best] * a
                if lhs < rgt or (lhs == rgt and self.basis[i] < self.basis[best]):
                    best = i
            if best < 0:
                raise RuntimeError("Farkas LP unbounded; normalisation row violated")
            r = best
            P = alpha[r]
            Rr = R[r]
            br = rhs[r]
            for i in range(self.m):
                if i == r:
                    continue
                a = alpha[i]
                row = R[i]
                if a:
                    R[i] = [(x * P - a * y) // D for x, y in zip(row, Rr)]
                    rhs[i] = (rhs[i] * P - a * br) // D
                else:
                    R[i] = [x * P // D for x in row]
                    rhs[i] = rhs[i] * P // D
            self.obj = obj = [(x * P - beta * y) // D for x, y in zip(obj, Rr)]
            self.z = (self.z * P - beta * br) // D
            self.D = P
            self.in_basis.discard(self.basis[r])
            self.basis[r] = enter
            self.in_basis.add(enter)
            self.pivots += 1


Row = tuple[str, object, Sequence[tuple[int, int]], int]
# (kind, key, [(variable, coefficient), ...], rhs) for  sum coeff * x_var >= rhs, rhs in {0, 1}
RowGenerator = Callable[[Sequence[int], int], list[Row]]


def solve_rows(nvars: int, rows: Iterable[Row], generate: RowGenerator | None = None
               ) -> tuple[list[Fraction], None] | tuple[None, dict[tuple[str, object], Fraction]]:
    """Feasibility of ``x >= 0`` under integer rows, with optional lazy rows.

    The last variable plays the role of the quota in separation problems but
    nothing here depends on that. ``generate(x_scaled, D)`` receives the
    current candidate as integers over the common denominator ``D`` and
    returns rows it violates. Returns ``(x, None)`` or ``(None, multipliers)``.
    """
    sx = _FarkasSimplex(nvars - 1)
    for kind, key, ent, rhs in rows:
        sx.add(kind, key, ent, rhs)
    while True:
        sx.optimize()
        if sx.z > 0:
            mult = {}
            for i, k in enumerate(sx.basis):
                tag = sx.tags[k]
                if tag is not None and sx.rhs[i]:
                    mult[tag] = Fraction(sx.rhs[i], sx.D)
            return None, mult
        x = sx.obj[:nvars]
        added = 0
        if generate is not None:
            for kind, key, ent, rhs in generate(x, sx.D):
                added += sx.add(kind, key, ent, rhs)
        if not added:
            return [Fraction(v, sx.D) for v in x], None


def _accept_entries(n: int, mask: int) -> list[tuple[int, int]]:
    return [(i - 1, 1) for i in bits.members(mask)] + [(n, -1)]


def _reject_entries(n: int, mask: int) -> list[tuple[int, int]]:
    return [(i - 1, -1) for i in bits.members(mask)] + [(n, 1)]


def lp_feasible(problem: SeparationProblem, batch: int | None = None) -> RationalSolution | Infeasible:
    """Find ``w >= 0, q`` meeting every constraint of ``problem`` or prove none exists.

    Accept and order constraints are generated lazily, at most ``batch``
    (default ``n + 1``) of each kind per round, most violated first.
    """
    n = problem.n
    for mask in list(problem.accept) + list(problem.reject):
        bits.check(mask, n)
    if not problem.reject:
        return RationalSolution(tuple(Fraction(1) for _ in range(n)), Fraction(1))
    batch = batch or n + 1
    rows = [("reject", m, _reject_entries(n, m), 1) for m in sorted(set(problem.reject))]
    accept = sorted(set(problem.accept))
    accept_members = [bits.members(a) for a in accept]
    order = sorted(set(problem.order))

    def generate(x: Sequence[int], D: int) -> list[Row]:
        w, q = x[:n], x[n]
        viol = []
        for a, mem in zip(accept, accept_members):
            s = q - sum(w[i - 1] for i in mem)
            if s > 0:
                viol.append((-s, a))
        viol.sort()
        out = [("accept", a, _accept_entries(n, a), 0) for _, a in viol[:batch]]
        if problem.accept_oracle is not None:
            extra = sorted(problem.accept_oracle(w, q), key=lambda t: (-t[0], t[1]))
            out += [("accept", a, _accept_entries(n, a), 0) for _, a in extra[:batch]]
        oviol = sorted((w[i - 1] - w[j - 1], (i, j)) for i, j in order if w[i - 1] < w[j - 1])
        out += [("order", p, [(p[0] - 1, 1), (p[1] - 1, -1)], 0) for _, p in oviol[:batch]]
        return out

    x, mult = solve_rows(n + 1, rows, generate)
    if x is None:
        out = Infeasible(n)
        for (kind, key), y in mult.items():
            getattr(out, kind)[key] = y
        if not out.check():
            raise AssertionError("Farkas certificate failed exact verification")
        return out
    return RationalSolution(tuple(x[:n]), x[n])
