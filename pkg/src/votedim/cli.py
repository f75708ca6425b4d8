"""Command line interface: ``votedim analyze|dimension|construct|verify``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__, bits
from .complete import NotComplete, from_oracle, maximal_losing_vectors, minimal_winning_vectors, shift_extremal
from .constructions import (
    FamilyBundle,
    example1_certificate,
    example2_certificate,
    example_game,
    parametric_bundle,
    prop_ne_coalition,
    prop_ne_game,
    theorem_bundle,
)
from .dimension import (
    BudgetExceeded,
    DimensionReport,
    codimension_exact,
    default_threads,
    dimension_exact,
    dimension_lower_clique,
    upper_bounds,
)
from .games import (
    DEFAULT_CAP,
    Game,
    SizeCapExceeded,
    VectorGame,
    count_type,
    desirability,
    dual,
    games_equal,
    is_monotone,
    maximal_losing,
    minimal_winning,
    truth_table,
    validate,
)
from .io import (
    FormatError,
    bundle_to_json,
    certificate_from_json,
    coalition_from_json,
    dumps,
    game_to_json,
    load_game,
    load_json,
    report_to_json,
)
from .weightedness import is_weighted, ordered_separation, verify_trading_transform

EXIT = {"ok": 0, "invalid-input": 1, "budget-exceeded": 2}


@dataclass
class CommandResult:
    status: str
    payload: dict
    human_text: str = ""

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]


def _ok(payload, text) -> CommandResult:
    payload = {"version": __version__, "status": "ok", **payload}
    return CommandResult("ok", payload, text)


def _fail(status: str, message: str, **extra) -> CommandResult:
    payload = {"version": __version__, "status": status, "error": message, **extra}
    return CommandResult(status, payload, f"{status}: {message}")


def _load(path: str) -> Game:
    g = load_game(path)
    problems = validate(g)
    if problems:
        raise FormatError("; ".join(p.message for p in problems))
    return g


def _fmt(mask: int) -> str:
    return bits.fmt(mask)


# -- analyze -------------------------------------------------------------------


def cmd_analyze(path: str) -> CommandResult:
    g = _load(path)
    out: dict = {"n": g.n}
    lines = [f"voters: {g.n}"]
    if isinstance(g, VectorGame) and g.n > DEFAULT_CAP:
        smin, smax = shift_extremal(g)
        out.update(monotone=True,
                   min_winning_count=sum(count_type(g.class_sizes, m) for m in minimal_winning_vectors(g)),
                   max_losing_count=sum(count_type(g.class_sizes, m) for m in maximal_losing_vectors(g)),
                   classes=[list(c) for c in g.classes], complete=True)
        vg = g
    else:
        out["monotone"] = is_monotone(truth_table(g))
        out["min_winning_count"] = len(minimal_winning(g))
        out["max_losing_count"] = len(maximal_losing(g))
        rep = desirability(g)
        out["complete"] = rep.complete
        out["classes"] = [list(c) for c in (rep.classes if rep.complete else rep.equivalence)]
        vg = from_oracle(g) if rep.complete else None
    lines += [
        f"monotone: {out['monotone']}",
        f"minimal winning coalitions: {out['min_winning_count']}",
        f"maximal losing coalitions: {out['max_losing_count']}",
        f"complete: {out['complete']}",
        "classes: " + " > ".join("{" + ",".join(map(str, c)) + "}" for c in out["classes"])
        if out["complete"] else "equivalence classes: " + " ".join("{" + ",".join(map(str, c)) + "}" for c in out["classes"]),
    ]
    if vg is not None:
        smin, smax = shift_extremal(vg)
        out["vector_form"] = {
            "t": vg.t,
            "class_sizes": list(vg.class_sizes),
            "shift_min_winning": [list(v) for v in smin],
            "shift_max_losing": [list(v) for v in smax],
            "minimal_winning_vectors": [list(v) for v in minimal_winning_vectors(vg)],
        }
        mwv = minimal_winning_vectors(vg)
        lines += [
            f"types: t={vg.t}, class sizes {list(vg.class_sizes)}",
            f"shift-minimal winning: {[tuple(v) for v in smin]}",
            f"shift-maximal losing: {[tuple(v) for v in smax]}",
            f"minimal winning vectors: {[tuple(v) for v in mwv]}" if len(mwv) <= 12
            else f"minimal winning vectors: {len(mwv)} (see --json)",
        ]
    w = is_weighted(g) if g.n <= DEFAULT_CAP or isinstance(g, VectorGame) else None
    out["weighted"] = None if w is None else game_to_json(w)
    lines.append(f"weighted: {w if w is not None else 'no'}")
    return _ok(out, "\n".join(lines))


# -- dimension -----------------------------------------------------------------


def _report_text(rep: DimensionReport) -> str:
    lines = [
        f"{rep.kind}",
        f"  clique lower bound: {rep.lower_clique}" + ("" if rep.clique_exact else " (greedy, lower bound only)"),
        f"  upper bound (maximal losing): {rep.upper_maxlosing}",
        f"  upper bound (unit-class games): {rep.upper_lemma2}",
        f"  exact: {rep.exact if rep.exact is not None else 'unknown'}",
    ]
    if rep.clique:
        lines.append("  clique: " + " ".join(_fmt(T) for T in rep.clique))
    for w in rep.witness_representation or ():
        lines.append(f"  witness: {w}")
    return "\n".join(lines)


def cmd_dimension(path: str, method: str = "exact", budget: float | None = None,
                  threads: int | None = None, codimension: bool = False) -> CommandResult:
    g = _load(path)
    target = dual(g) if codimension else g
    kind = "codimension" if codimension else "dimension"
    try:
        bounds = upper_bounds(target)
    except SizeCapExceeded as e:
        return _fail("budget-exceeded", str(e))
    bounds.kind = kind
    try:
        if method == "upper":
            rep = bounds
        elif method == "lower":
            lo, clique, exact = dimension_lower_clique(target, budget=budget, threads=threads)
            rep = bounds
            rep.lower_clique, rep.clique, rep.clique_exact = lo, clique, exact
            if codimension:
                rep.clique = sorted(bits.full(g.n) ^ T for T in clique)
        else:
            run = codimension_exact if codimension else dimension_exact
            rep = run(g, budget, threads=threads)
    except BudgetExceeded as e:
        rep = e.report or bounds
        rep.kind = kind
        return CommandResult("budget-exceeded",
                             {"version": __version__, "status": "budget-exceeded", "error": str(e),
                              "report": report_to_json(rep)},
                             f"budget-exceeded: {e}\n" + _report_text(rep))
    except SizeCapExceeded as e:
        return CommandResult("budget-exceeded",
                             {"version": __version__, "status": "budget-exceeded", "error": str(e),
                              "report": report_to_json(bounds)},
                             f"budget-exceeded: {e}\n" + _report_text(bounds))
    return _ok({"report": report_to_json(rep)}, _report_text(rep))


# -- construct -----------------------------------------------------------------


def _build(family: str, args) -> FamilyBundle:
    if family == "example1":
        return FamilyBundle(example_game(1), list(example1_certificate().Y), [example1_certificate()], 2)
    if family == "example2":
        c = example2_certificate()
        pb = parametric_bundle(2, 4)
        return FamilyBundle(example_game(2), list(c.Y), [c], 2, pb.upper_witness)
    if family == "prop-ne":
        g = prop_ne_game(args.class_size, check=True)
        return FamilyBundle(g, [prop_ne_coalition(g)], [], 1, None, {"class_size": args.class_size})
    if family == "parametric":
        if args.d is None:
            raise ValueError("parametric needs --d")
        return parametric_bundle(args.d, args.n2)
    if family == "theorem":
        if args.k is None:
            raise ValueError("theorem needs --k")
        return theorem_bundle(args.k, args.target)
    raise ValueError(f"unknown family {family!r}")


def cmd_construct(family: str, args, out: str | None = None) -> CommandResult:
    b = _build(family, args)
    doc = bundle_to_json(b, family)
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(dumps(doc) + "\n")
    text = "\n".join([
        f"family: {family} {b.params or ''}".rstrip(),
        f"voters: {b.game.n}",
        f"losing family: {len(b.losing_family)} coalitions",
        f"certificates: {len(b.certificates)}",
        f"claimed lower bound: {b.claimed_lower_bound}",
        f"upper witness games: {len(b.upper_witness) if b.upper_witness is not None else 'none'}",
    ] + ([f"written to {out}"] if out else []))
    return _ok({"bundle": doc, "output": out}, text)


# -- verify --------------------------------------------------------------------


def _voters(spec: str, n: int) -> int:
    try:
        members = [int(x) for x in spec.replace(",", " ").split()]
    except ValueError:
        raise FormatError(f"voter list {spec!r} must be integers") from None
    return coalition_from_json(members, n)


def cmd_verify(path: str, certificate: str | None = None, equals: str | None = None,
               ordered: str | None = None, no_order: bool = False) -> CommandResult:
    g = _load(path)
    if sum(x is not None for x in (certificate, equals, ordered)) != 1:
        raise FormatError("give exactly one of --certificate, --equals, --ordered-separation")
    if certificate is not None:
        doc = load_json(certificate)
        if isinstance(doc, dict) and "certificates" in doc:
            raise FormatError("pass a single certificate document, not a bundle")
        tt = certificate_from_json(doc, g.n)
        verdict = verify_trading_transform(g, tt)
        return _ok({"certificate": verdict.value, "length": tt.length}, f"certificate: {verdict.value}")
    if equals is not None:
        other = _load(equals)
        if other.n != g.n:
            raise FormatError(f"voter counts differ: {g.n} vs {other.n}")
        eq = games_equal(g, other)
        return _ok({"equal": eq}, f"equal: {eq}")
    try:
        vg = from_oracle(g)
    except NotComplete:
        raise FormatError("ordered separation needs a complete game") from None
    T = _voters(ordered, g.n)
    try:
        res = ordered_separation(vg, T, respect_order=not no_order)
    except ValueError as e:
        raise FormatError(str(e)) from None
    if res:
        w = res.game()
        return _ok({"feasible": True, "witness": game_to_json(w)},
                   f"ordered separation of {_fmt(T)}: feasible\nwitness: {w}")
    proof = {"farkas_verified": res.check(), "accept_multipliers": len(res.accept),
             "reject_multipliers": len(res.reject), "order_multipliers": len(res.order)}
    return _ok({"feasible": False, "proof": proof},
               f"ordered separation of {_fmt(T)}: infeasible\n"
               f"Farkas certificate verified: {proof['farkas_verified']} "
               f"({proof['accept_multipliers']} accept, {proof['reject_multipliers']} reject, "
               f"{proof['order_multipliers']} order multipliers)")


# -- entry point ---------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    # usage errors are invalid input (exit 1); exit 2 is reserved for budgets
    def error(self, message):
        raise FormatError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="votedim", description="Dimension and weightedness of simple games.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="print the JSON payload instead of text")

    a = sub.add_parser("analyze", help="structural analysis of a game file")
    a.add_argument("game")
    common(a)

    d = sub.add_parser("dimension", help="dimension bounds or exact value")
    d.add_argument("game")
    d.add_argument("--method", choices=["exact", "lower", "upper"], default="exact")
    d.add_argument("--budget", type=float, default=None, help="wall-clock seconds")
    d.add_argument("--threads", type=int, default=None, help="processes for pairwise LPs (env VOTEDIM_THREADS)")
    d.add_argument("--codimension", action="store_true", help="unions instead of intersections")
    common(d)

    c = sub.add_parser("construct", help="build a game family bundle")
    c.add_argument("family", choices=["example1", "example2", "prop-ne", "parametric", "theorem"])
    c.add_argument("--d", type=int)
    c.add_argument("--n2", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--target", type=int, help="cap on the theorem family size")
    c.add_argument("--class-size", type=int, default=20)
    c.add_argument("-o", "--output")
    common(c)

    v = sub.add_parser("verify", help="check a certificate, an equality or an ordered separation")
    v.add_argument("game")
    g = v.add_mutually_exclusive_group(required=True)
    g.add_argument("--certificate")
    g.add_argument("--equals")
    g.add_argument("--ordered-separation", metavar="VOTERS", help='e.g. "1,2,3,4,21,22"')
    v.add_argument("--no-order", action="store_true", help="drop the class order constraints")
    common(v)
    return p


def run(argv=None) -> CommandResult:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "analyze":
            return cmd_analyze(args.game)
        if args.command == "dimension":
            threads = args.threads if args.threads is not None else default_threads()
            if threads < 1:
                raise FormatError("--threads must be positive")
            return cmd_dimension(args.game, args.method, args.budget, threads, args.codimension)
        if args.command == "construct":
            return cmd_construct(args.family, args, args.output)
        return cmd_verify(args.game, args.certificate, args.equals, args.ordered_separation, args.no_order)
    except (FormatError, ValueError, OSError, KeyError, TypeError) as e:
        return _fail("invalid-input", str(e) or type(e).__name__)


def main(argv=None) -> int:
    args = sys.argv[1:] if argv is None else argv
    res = run(args)
    if "--json" in args:
        print(json.dumps(res.payload, indent=2, sort_keys=True))
    else:
        print(res.human_text, file=sys.stdout if res.status == "ok" else sys.stderr)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
