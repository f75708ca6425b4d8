"""Canonical JSON for games, certificates, dimension reports and family bundles.

Game documents::

    {"kind": "explicit", "n": 4, "min_winning": [[1, 2], [3, 4]]}
    {"kind": "weighted", "quota": "2", "weights": ["1", "1", "2", "0"]}
    {"kind": "complete", "classes": [2, 4], "shift_min_winning": [[2, 0], [0, 4]]}
    {"kind": "and", "parts": [...]}, {"kind": "or", "parts": [...]}

Rationals are strings ``"p"`` or ``"p/q"`` in lowest terms with ``q > 1``.
A complete game may carry ``"voters"``, the voters listed class by class.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from . import __version__, bits
from .games import Combination, ExplicitGame, Game, Op, VectorGame, WeightedGame

_RATIONAL = re.compile(r"-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?")


class FormatError(ValueError):
    """Malformed input document."""


def parse_rational(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise FormatError(f"rational must be a string 'p' or 'p/q', got {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not _RATIONAL.fullmatch(s) or s == "-0":
        raise FormatError(f"malformed rational {s!r}")
    value = Fraction(s)
    if "/" in s and (value.denominator == 1 or str(value) != s):
        raise FormatError(f"unnormalised rational {s!r}; write {value}")
    return value


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"{what} must be an integer, got {x!r}")
    return x


def _list(x, what: str) -> list:
    if not isinstance(x, list):
        raise FormatError(f"{what} must be a list, got {type(x).__name__}")
    return x


def _keys(doc: dict, required: set[str], optional: set[str] = frozenset()) -> None:
    missing = required - doc.keys()
    extra = doc.keys() - required - optional
    if missing:
        raise FormatError(f"missing keys {sorted(missing)}")
    if extra:
        raise FormatError(f"unknown keys {sorted(extra)}")


def coalition_from_json(members, n: int) -> int:
    members = [_int(v, "voter") for v in _list(members, "coalition")]
    if len(set(members)) != len(members):
        raise FormatError(f"repeated voter in {members}")
    try:
        return bits.coalition(members, n)
    except ValueError as e:
        raise FormatError(str(e)) from None


def coalition_to_json(mask: int) -> list[int]:
    return list(bits.members(mask))


def game_from_json(doc: Any) -> Game:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise FormatError("a game is an object with a 'kind' key")
    kind = doc["kind"]
    try:
        if kind == "explicit":
            _keys(doc, {"kind", "n", "min_winning"})
            n = _int(doc["n"], "n")
            if not 0 < n <= bits.MAX_VOTERS:
                raise FormatError(f"n={n} outside 1..{bits.MAX_VOTERS}")
            return ExplicitGame(n, tuple(coalition_from_json(c, n) for c in _list(doc["min_winning"], "min_winning")))
        if kind == "weighted":
            _keys(doc, {"kind", "quota", "weights"})
            ws = tuple(parse_rational(w) for w in _list(doc["weights"], "weights"))
            return WeightedGame(parse_rational(doc["quota"]), ws)
        if kind == "complete":
            _keys(doc, {"kind", "classes", "shift_min_winning"}, {"voters"})
            sizes = tuple(_int(s, "class size") for s in _list(doc["classes"], "classes"))
            vecs = tuple(tuple(_int(x, "vector entry") for x in _list(v, "vector"))
                         for v in _list(doc["shift_min_winning"], "shift_min_winning"))
            voters = doc.get("voters")
            if voters is not None:
                voters = tuple(_int(v, "voter") for v in _list(voters, "voters"))
            return VectorGame(sizes, vecs, voters)
        if kind in ("and", "or"):
            _keys(doc, {"kind", "parts"})
            return Combination(Op(kind), tuple(game_from_json(p) for p in _list(doc["parts"], "parts")))
    except FormatError:
        raise
    except (ValueError, TypeError) as e:
        raise FormatError(str(e)) from None
    raise FormatError(f"unknown game kind {kind!r}")


def game_to_json(g: Game) -> dict:
    if isinstance(g, ExplicitGame):
        return {"kind": "explicit", "n": g.n, "min_winning": [coalition_to_json(m) for m in g.min_winning]}
    if isinstance(g, WeightedGame):
        return {"kind": "weighted", "quota": format_rational(g.quota),
                "weights": [format_rational(w) for w in g.weights]}
    if isinstance(g, VectorGame):
        doc = {"kind": "complete", "classes": list(g.class_sizes),
               "shift_min_winning": [list(v) for v in g.shift_min_winning]}
        if g.voters is not None:
            doc["voters"] = list(g.voters)
        return doc
    if isinstance(g, Combination):
        return {"kind": g.op.value, "parts": [game_to_json(p) for p in g.parts]}
    raise TypeError(f"not a game: {g!r}")


def certificate_from_json(doc: Any, n: int):
    from .weightedness import TradingTransform

    if not isinstance(doc, dict):
        raise FormatError("a certificate is an object with keys 'X' and 'Y'")
    _keys(doc, {"X", "Y"})
    X = tuple(coalition_from_json(c, n) for c in _list(doc["X"], "X"))
    Y = tuple(coalition_from_json(c, n) for c in _list(doc["Y"], "Y"))
    return TradingTransform(X, Y)


def certificate_to_json(tt) -> dict:
    return {"X": [coalition_to_json(m) for m in tt.X], "Y": [coalition_to_json(m) for m in tt.Y]}


def report_to_json(rep) -> dict:
    ws = rep.witness_representation
    return {
        "version": __version__,
        "kind": rep.kind,
        "lower_clique": rep.lower_clique,
        "clique_exact": rep.clique_exact,
        "clique": [coalition_to_json(T) for T in rep.clique],
        "upper_maxlosing": rep.upper_maxlosing,
        "upper_lemma2": rep.upper_lemma2,
        "exact": rep.exact,
        "witness_representation": None if ws is None else [game_to_json(w) for w in ws],
    }


def report_from_json(doc: dict, n: int | None = None):
    from .dimension import DimensionReport

    ws = doc.get("witness_representation")
    clique = doc.get("clique", [])
    width = n or bits.MAX_VOTERS
    return DimensionReport(
        lower_clique=doc["lower_clique"],
        upper_maxlosing=doc["upper_maxlosing"],
        upper_lemma2=doc["upper_lemma2"],
        exact=doc.get("exact"),
        witness_representation=None if ws is None else [game_from_json(w) for w in ws],
        clique=[coalition_from_json(c, width) for c in clique],
        clique_exact=doc.get("clique_exact", True),
        kind=doc.get("kind", "dimension"),
    )


def bundle_to_json(b, family: str) -> dict:
    doc = {
        "version": __version__,
        "family": family,
        "params": dict(b.params),
        "game": game_to_json(b.game),
        "losing_family": [coalition_to_json(T) for T in b.losing_family],
        "certificates": [certificate_to_json(c) for c in b.certificates],
        "claimed_lower_bound": b.claimed_lower_bound,
        "upper_witness": None if b.upper_witness is None else [game_to_json(w) for w in b.upper_witness],
    }
    if b.code is not None:
        doc["code"] = {"n": b.code.n, "w": b.code.w, "codewords": [list(c) for c in b.code.codewords]}
    return doc


def bundle_from_json(doc: dict):
    from .codes import ConstantWeightCode
    from .constructions import FamilyBundle

    g = game_from_json(doc["game"])
    code = doc.get("code")
    uw = doc.get("upper_witness")
    return FamilyBundle(
        game=g,
        losing_family=[coalition_from_json(c, g.n) for c in doc["losing_family"]],
        certificates=[certificate_from_json(c, g.n) for c in doc["certificates"]],
        claimed_lower_bound=doc["claimed_lower_bound"],
        upper_witness=None if uw is None else [game_from_json(w) for w in uw],
        params=dict(doc.get("params", {})),
        code=None if code is None else ConstantWeightCode(code["n"], code["w"], tuple(map(tuple, code["codewords"]))),
    )


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: invalid JSON ({e})") from None


def load_game(path: str) -> Game:
    return game_from_json(load_json(path))
