"""Dimension and codimension of simple games.

The dimension is the least number of weighted games whose intersection is
the game. Each weighted game in such a representation accepts every
winning coalition, so the problem is to cover the maximal losing
coalitions by groups that one weighted game can reject together
("co-excludable" groups). Two maximal losing coalitions that no weighted
game can reject together conflict; a clique of conflicts is a lower bound.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from typing import Iterable, Sequence

from . import bits
from .clique import max_clique
from .complete import maximal_losing_vectors
from .games import (
    DEFAULT_CAP,
    Combination,
    Game,
    SizeCapExceeded,
    VectorGame,
    WeightedGame,
    AND,
    OR,
    dual,
    equivalence_classes,
    maximal_losing,
    minimal_winning,
)
from .lp import SeparationProblem, lp_feasible
from .weightedness import Separator, length_two_certificate

EXACT_CAP = 20
# raised from 60 so that the parametric family up to d = 5 (345 coalitions) fits
MAX_LOSING_CAP = 400
CONFLICT_CAP = 500
CLIQUE_EXACT_LIMIT = 200


class BudgetExceeded(RuntimeError):
    """Wall-clock budget ran out; ``report`` holds the bounds known so far."""

    def __init__(self, message: str, report: "DimensionReport | None" = None):
        super().__init__(message)
        self.report = report


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("VOTEDIM_THREADS", "1")))
    except ValueError:
        return 1


class _Clock:
    def __init__(self, budget: float | None):
        self.deadline = None if budget is None else time.monotonic() + budget

    def check(self, report=None) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exceeded", report)


# -- conflict graph ------------------------------------------------------------


@dataclass
class ConflictGraph:
    vertices: tuple[int, ...]
    adjacency: tuple[int, ...]  # bitsets over vertex positions
    lp_calls: int = 0
    shortcuts: int = 0

    def has_edge(self, a: int, b: int) -> bool:
        i, j = self.vertices.index(a), self.vertices.index(b)
        return bool(self.adjacency[i] >> j & 1)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for i, adj in enumerate(self.adjacency):
            for j in range(i + 1, len(self.vertices)):
                if adj >> j & 1:
                    out.append((self.vertices[i], self.vertices[j]))
        return out


def _rejects(w: WeightedGame, members: Sequence[Sequence[int]]) -> int:
    """Bitset of positions whose coalition loses in ``w``."""
    q, ws = w.integral()
    out = 0
    for k, mem in enumerate(members):
        if sum(ws[i - 1] for i in mem) < q:
            out |= 1 << k
    return out


def _solve_pair(args):
    n, accept, pair = args
    res = lp_feasible(SeparationProblem(n, accept=accept, reject=pair))
    return pair, (res.game() if res else None)


def conflict_graph(g: Game, vertices: Sequence[int] | None = None, *, separator: Separator | None = None,
                   seeds: Iterable[WeightedGame] = (), budget: float | None = None,
                   threads: int | None = None, cap: int = DEFAULT_CAP,
                   _clock: _Clock | None = None) -> ConflictGraph:
    """Pairs of losing coalitions that no weighted game can reject together.

    A pair is decided without an LP when a previously found weighted game
    (a seed or an earlier LP witness) already rejects both coalitions, or
    when a length-2 certificate exists for it.
    """
    if g.n > cap:
        raise SizeCapExceeded(f"conflict graph is limited to {cap} voters")
    V = tuple(sorted(maximal_losing(g, cap) if vertices is None else vertices))
    if len(V) > CONFLICT_CAP:
        raise SizeCapExceeded(f"{len(V)} maximal losing coalitions exceed {CONFLICT_CAP}")
    clock = _clock or _Clock(budget)
    sep = separator or Separator(g, cap)
    threads = threads or default_threads()
    members = [bits.members(T) for T in V]
    covered = [0] * len(V)

    def add_witness(w: WeightedGame) -> None:
        rej = _rejects(w, members)
        r = rej
        while r:
            low = r & -r
            covered[low.bit_length() - 1] |= rej
            r ^= low

    for w in seeds:
        add_witness(w)
    adj = [0] * len(V)
    cg = ConflictGraph(V, ())
    pending = []
    for i in range(len(V)):
        for j in range(i + 1, len(V)):
            if covered[i] >> j & 1:
                continue
            if length_two_certificate(g, V[i], V[j], sep.table) is not None:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
                cg.shortcuts += 1
                continue
            pending.append((i, j))
        clock.check()

    def settle(i, j, w):
        if w is None:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        else:
            add_witness(w)

    if threads <= 1:
        for i, j in pending:
            if covered[i] >> j & 1:
                continue
            clock.check()
            res = sep.solve((V[i], V[j]))
            cg.lp_calls += 1
            settle(i, j, res.game() if res else None)
    else:
        pos = {T: k for k, T in enumerate(V)}
        accept = tuple(sep.accept)
        with ProcessPoolExecutor(threads) as ex:
            k = 0
            while k < len(pending):
                wave = []
                while k < len(pending) and len(wave) < 4 * threads:
                    i, j = pending[k]
                    k += 1
                    if not covered[i] >> j & 1:
                        wave.append((V[i], V[j]))
                clock.check()
                for pair, w in ex.map(_solve_pair, [(g.n, accept, p) for p in wave]):
                    cg.lp_calls += 1
                    settle(pos[pair[0]], pos[pair[1]], w)
    cg.adjacency = tuple(adj)
    return cg


# -- reports -------------------------------------------------------------------


@dataclass
class DimensionReport:
    lower_clique: int
    upper_maxlosing: int
    upper_lemma2: int
    exact: int | None = None
    witness_representation: list[WeightedGame] | None = None
    clique: list[int] = field(default_factory=list)
    clique_exact: bool = True
    kind: str = "dimension"

    @property
    def upper(self) -> int:
        return min(self.upper_maxlosing, self.upper_lemma2)

    def combination(self) -> Game | None:
        """The witness as a single game: AND for dimension, OR for codimension."""
        ws = self.witness_representation
        if not ws:
            return None
        if len(ws) == 1:
            return ws[0]
        return AND(*ws) if self.kind == "dimension" else OR(*ws)


def dimension_lower_clique(g: Game, *, budget: float | None = None, threads: int | None = None,
                           cap: int = DEFAULT_CAP) -> tuple[int, list[int], bool]:
    """``(bound, clique coalitions, is_maximum_clique)``; weighted games give 1."""
    sep = Separator(g, cap)
    L = maximal_losing(g, cap)
    if sep.solve(L):
        return 1, [], True
    cg = conflict_graph(g, L, separator=sep, seeds=_lemma2_seeds(g, cap), budget=budget, threads=threads, cap=cap)
    clique, exact = max_clique(cg.adjacency, CLIQUE_EXACT_LIMIT)
    return max(2, len(clique)), [cg.vertices[k] for k in clique], exact


# -- the unit-class construction -----------------------------------------------


def lemma2_representation(g: Game, i: int, cap: int = DEFAULT_CAP) -> list[WeightedGame]:
    """Weighted games, one per maximal losing coalition up to duplicates, whose intersection is ``g``.

    For a maximal losing ``S`` with ``a`` members in class ``N_i`` and
    ``S' = S - N_i``: quota ``a + 1``, weight 1 on ``N_i``, ``a + 1`` on
    voters outside ``S' | N_i`` and 0 on ``S'``. The game only depends on
    ``(S', a)``.
    """
    classes = equivalence_classes(g, cap)
    if not 1 <= i <= len(classes):
        raise ValueError(f"class index {i} outside 1..{len(classes)}")
    Ni = bits.coalition(classes[i - 1])
    out: dict[tuple[int, int], WeightedGame] = {}
    for S in maximal_losing(g, cap):
        a = (S & Ni).bit_count()
        Sp = S & ~Ni
        if (Sp, a) in out:
            continue
        ws = []
        for v in range(g.n):
            bit = 1 << v
            ws.append(1 if bit & Ni else 0 if bit & Sp else a + 1)
        out[(Sp, a)] = WeightedGame(Fraction(a + 1), tuple(Fraction(x) for x in ws))
    return list(out.values())


def lemma2_count(g: Game, i: int | None = None, cap: int = DEFAULT_CAP) -> int:
    """Number of distinct unit-class games for class ``i`` (best class when ``None``).

    Vector games are counted from maximal losing vectors without listing
    coalitions, so this also works for large complete games.
    """
    if isinstance(g, VectorGame):
        vecs = maximal_losing_vectors(g)
        sizes = g.class_sizes

        def count(h):
            return sum(prod(comb(s, x) for k, (s, x) in enumerate(zip(sizes, m)) if k != h) for m in vecs)

        idx = range(g.t) if i is None else [i - 1]
        return min(count(h) for h in idx)
    if i is not None:
        return len(lemma2_representation(g, i, cap))
    L = maximal_losing(g, cap)
    best = len(L)
    for cls in equivalence_classes(g, cap):
        Ni = bits.coalition(cls)
        best = min(best, len({(S & ~Ni, (S & Ni).bit_count()) for S in L}))
    return best


def maximal_losing_count(g: Game, cap: int = DEFAULT_CAP) -> int:
    if isinstance(g, VectorGame):
        return sum(prod(comb(s, x) for s, x in zip(g.class_sizes, m)) for m in maximal_losing_vectors(g))
    return len(maximal_losing(g, cap))


def _best_lemma2(g: Game, cap: int) -> list[WeightedGame]:
    classes = equivalence_classes(g, cap)
    best = None
    for i in range(1, len(classes) + 1):
        ws = lemma2_representation(g, i, cap)
        if best is None or len(ws) < len(best):
            best = ws
    return best or []


def _lemma2_seeds(g: Game, cap: int) -> list[WeightedGame]:
    seeds = []
    for i in range(1, len(equivalence_classes(g, cap)) + 1):
        seeds.extend(lemma2_representation(g, i, cap))
    return seeds


def upper_bounds(g: Game, cap: int = DEFAULT_CAP) -> DimensionReport:
    """Bounds only: no LP, works on large vector games."""
    ml = maximal_losing_count(g, cap)
    return DimensionReport(lower_clique=1, upper_maxlosing=ml, upper_lemma2=lemma2_count(g, None, cap))


# -- exact dimension -----------------------------------------------------------


def _partition(k: int, V: Sequence[int], adj: Sequence[int], clique: Sequence[int], sep: Separator,
               members, clock: _Clock, report) -> list[WeightedGame] | None:
    """Assign every vertex to one of ``k`` co-excludable groups, or ``None``.

    Clique members seed distinct groups. After that the next vertex is the
    one with the fewest groups left free of conflicts (ties: most conflicts,
    then colex), so dead ends show up early.
    """
    nv = len(V)
    groups: list[list[int]] = [[] for _ in range(k)]
    conflicts = [0] * k
    witness: list[tuple[int, tuple[int, ...]] | None] = [None] * k
    ints: dict[frozenset, tuple[int, tuple[int, ...]] | None] = {}
    unassigned = set(range(nv))
    degree = [a.bit_count() for a in adj]

    def solve(grp: list[int]):
        key = frozenset(grp)
        if key not in ints:
            res = sep.solve([V[u] for u in grp])
            ints[key] = res.integral() if res else None
        return ints[key]

    def rejects(wq, v):
        q, ws = wq
        return sum(ws[i - 1] for i in members[v]) < q

    def assign(gi: int, v: int) -> bool:
        old = witness[gi]
        if old is None or not rejects(old, v):
            new = solve(groups[gi] + [v])
            if new is None:
                return False
        else:
            new = old
        groups[gi].append(v)
        conflicts[gi] |= adj[v]
        witness[gi] = new
        unassigned.discard(v)
        return True

    def undo(gi: int, v: int, old_conf: int, old_w) -> None:
        groups[gi].pop()
        conflicts[gi] = old_conf
        witness[gi] = old_w
        unassigned.add(v)

    def choose() -> tuple[int, list[int]]:
        best, best_key, best_opts = -1, None, []
        for v in unassigned:
            opts = []
            empty_seen = False
            for gi in range(k):
                if not groups[gi]:
                    if empty_seen:
                        continue
                    empty_seen = True
                if not conflicts[gi] >> v & 1:
                    opts.append(gi)
            key = (len(opts), -degree[v], V[v])
            if best_key is None or key < best_key:
                best, best_key, best_opts = v, key, opts
                if not opts:
                    break
        return best, best_opts

    def place() -> bool:
        if not unassigned:
            return True
        clock.check(report)
        v, opts = choose()
        for gi in opts:
            old_conf, old_w = conflicts[gi], witness[gi]
            if not assign(gi, v):
                continue
            if place():
                return True
            undo(gi, v, old_conf, old_w)
        return False

    for gi, v in enumerate(clique):
        if not assign(gi, v):
            return None
    if not place():
        return None
    return [sep.witness([V[u] for u in grp]) for grp in groups if grp]


def dimension_exact(g: Game, budget: float | None = None, *, threads: int | None = None,
                    cap: int = EXACT_CAP, max_losing: int = MAX_LOSING_CAP) -> DimensionReport:
    """Exact dimension with a witness representation.

    Iterative deepening from the clique bound: for each candidate ``k`` a
    backtracking search assigns maximal losing coalitions to ``k`` groups,
    keeping a group only while one weighted game still rejects all of it.
    Raises :class:`BudgetExceeded` (carrying the bounds) when ``budget``
    seconds run out.
    """
    if g.n > cap:
        raise SizeCapExceeded(f"exact dimension is limited to {cap} voters")
    clock = _Clock(budget)
    L = maximal_losing(g, cap)
    if len(L) > max_losing:
        raise SizeCapExceeded(f"{len(L)} maximal losing coalitions exceed the limit of {max_losing}")
    lemma2 = _best_lemma2(g, cap)
    report = DimensionReport(lower_clique=1, upper_maxlosing=len(L), upper_lemma2=len(lemma2))
    sep = Separator(g, cap)
    whole = sep.solve(L)
    if whole:
        report.exact = 1
        report.witness_representation = [whole.game()]
        return report
    report.lower_clique = 2
    try:
        cg = conflict_graph(g, L, separator=sep, seeds=_lemma2_seeds(g, cap), threads=threads, cap=cap,
                            _clock=clock)
    except BudgetExceeded as e:
        e.report = e.report or report
        raise
    clique, report.clique_exact = max_clique(cg.adjacency, CLIQUE_EXACT_LIMIT)
    report.clique = [cg.vertices[v] for v in clique]
    report.lower_clique = max(2, len(clique))
    members = [bits.members(T) for T in cg.vertices]
    k = report.lower_clique
    while k < report.upper:
        found = _partition(k, cg.vertices, cg.adjacency, clique, sep, members, clock, report)
        if found is not None:
            report.exact = k
            report.witness_representation = found
            return report
        k += 1
    report.exact = report.upper
    if len(lemma2) <= len(L):
        report.witness_representation = lemma2
    else:
        report.witness_representation = [sep.witness([T]) for T in L]
    return report


def codimension_exact(g: Game, budget: float | None = None, **kw) -> DimensionReport:
    """Least number of weighted games whose union is ``g``, through the dual game."""
    try:
        rep = dimension_exact(dual(g), budget, **kw)
    except BudgetExceeded as e:
        if e.report is not None:
            _to_codimension(e.report, g.n)
        raise
    return _to_codimension(rep, g.n)


def _to_codimension(rep: DimensionReport, n: int) -> DimensionReport:
    # dual witnesses and complemented clique: minimal winning coalitions of the input
    if rep.witness_representation is not None:
        rep.witness_representation = [dual(w) for w in rep.witness_representation]
    rep.clique = sorted(bits.full(n) ^ T for T in rep.clique)
    rep.kind = "codimension"
    return rep


# -- Boolean combinations of complete games -------------------------------------


def boolean_upper_construction(g: VectorGame) -> Game:
    """OR over shift-minimal vectors of AND over prefix-sum threshold games.

    Leaf ``(i, j)`` has quota ``m_1 + ... + m_j`` and weight 1 on classes
    ``1..j``; leaves with quota 0 are always true and are left out.
    """
    n = g.n
    terms = []
    for m in sorted(g.shift_min_winning, reverse=True):
        leaves = []
        pre, cum = 0, 0
        for j in range(g.t):
            pre += m[j]
            cum |= g.class_masks[j]
            if pre == 0:
                continue
            ws = tuple(Fraction((cum >> v) & 1) for v in range(n))
            leaves.append(WeightedGame(Fraction(pre), ws))
        terms.append(leaves[0] if len(leaves) == 1 else AND(*leaves))
    return terms[0] if len(terms) == 1 else OR(*terms)


def leaf_count(g: Game) -> int:
    return len(g.leaves()) if isinstance(g, Combination) else 1


@dataclass(frozen=True)
class BoolDimBounds:
    rt: int
    tnt: int
    two_types: int | None  # floor(2(n+3)/3), only for t = 2


def booldim_bounds(g: VectorGame) -> BoolDimBounds:
    r, t, n = len(g.shift_min_winning), g.t, g.n
    two = None
    if t == 2:
        if n < 3 * r - 3:
            raise AssertionError(f"two-type game with r={r} shift-minimal vectors needs n >= {3 * r - 3}, got {n}")
        two = 2 * (n + 3) // 3
    return BoolDimBounds(r * t, t * n**t, two)
