"""JSON model documents.

A document is ``{"schema": 1, "model": <expr>}`` plus optional ``name``,
``note`` and ``expect`` keys that are carried through untouched.  Rationals
travel as canonical ``"p/q"`` strings (``"0"`` and ``"1"`` for integers),
never as floats.

Element encodings::

    {"idx": 3}                          finite table index
    {"bits": [0, 2]}                    Boolean subset of atoms
    {"rat": "1/3"}                      interval
    {"mat": [["1/2","0"],["0","1/2"]]}  matrix interval
    {"branch": 1, "inner": {...}}       horizontal-sum branch
    {"tuple": [{...}, ...]}             direct-sum component list
    "zero" / "one"                      the extremes of any model

``{"zero": true}`` and ``{"one": true}`` are accepted as aliases.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .core import FiniteEATable, StructuralError
from .models import (ONE, ZERO, Boolean, BooleanModel, Branch, Corner, CornerModel,
                     DirectSum, DirectSumModel, Finite, FiniteModel, HorizontalSum,
                     HorizontalSumModel, Interval, IntervalModel, Mat, MatrixInterval,
                     MatrixIntervalModel, Model)

SCHEMA = 1
_RAT = re.compile(r"^(-?\d+)(?:/(\d+))?$")
_EXTRA_KEYS = ("name", "note", "expect")


class ParseError(ValueError):
    """Malformed document; ``location`` is a path such as ``model.parts[1]``."""

    def __init__(self, location: str, message: str):
        self.location = location
        self.message = message
        super().__init__(f"{location}: {message}")


@dataclass
class ModelDocument:
    model: Model
    extra: dict = field(default_factory=dict)

    @property
    def name(self) -> str | None:
        return self.extra.get("name")


# -- rationals -----------------------------------------------------------------

def parse_rational(s, loc: str) -> Fraction:
    if not isinstance(s, str):
        raise ParseError(loc, f"rationals are strings 'p/q', got {s!r}")
    m = _RAT.match(s.strip())
    if not m or s != s.strip():
        raise ParseError(loc, f"malformed rational {s!r}")
    num = int(m.group(1))
    den = int(m.group(2) or 1)
    if den == 0:
        raise ParseError(loc, f"zero denominator in {s!r}")
    q = Fraction(num, den)
    if str(q) != s:
        raise ParseError(loc, f"rational {s!r} is not canonical (write {str(q)!r})")
    return q


def emit_rational(q: Fraction) -> str:
    return str(Fraction(q))


# -- helpers ----------------------------------------------------------------------

def _obj(x, loc: str, keys: set[str], required: set[str] = frozenset()) -> dict:
    if not isinstance(x, dict):
        raise ParseError(loc, f"expected an object, got {type(x).__name__}")
    unknown = set(x) - keys
    if unknown:
        raise ParseError(loc, f"unknown key(s) {sorted(unknown)}")
    missing = set(required) - set(x)
    if missing:
        raise ParseError(loc, f"missing key(s) {sorted(missing)}")
    return x


def _int(x, loc: str, lo: int = 0) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < lo:
        raise ParseError(loc, f"expected an integer ≥ {lo}, got {x!r}")
    return x


def _list(x, loc: str) -> list:
    if not isinstance(x, list):
        raise ParseError(loc, f"expected a list, got {type(x).__name__}")
    return x


# -- models -----------------------------------------------------------------------

def parse_model(expr, loc: str = "model") -> Model:
    if not isinstance(expr, dict) or "kind" not in expr:
        raise ParseError(loc, "model expressions are objects with a 'kind'")
    kind = expr["kind"]
    try:
        if kind == "finite":
            return _parse_finite(expr, loc)
        if kind == "boolean":
            _obj(expr, loc, {"kind", "atoms"}, {"atoms"})
            return Boolean(_int(expr["atoms"], f"{loc}.atoms", 1))
        if kind == "interval":
            _obj(expr, loc, {"kind"})
            return Interval()
        if kind == "matrix_interval":
            _obj(expr, loc, {"kind"})
            return MatrixInterval()
        if kind in ("direct_sum", "horizontal_sum"):
            _obj(expr, loc, {"kind", "parts"}, {"parts"})
            parts = [parse_model(p, f"{loc}.parts[{i}]")
                     for i, p in enumerate(_list(expr["parts"], f"{loc}.parts"))]
            return DirectSum(parts) if kind == "direct_sum" else HorizontalSum(parts)
        if kind == "corner":
            _obj(expr, loc, {"kind", "base", "idempotent"}, {"base", "idempotent"})
            base = parse_model(expr["base"], f"{loc}.base")
            p = parse_element(base, expr["idempotent"], f"{loc}.idempotent")
            return Corner(base, p)
    except ParseError:
        raise
    except (ValueError, TypeError) as exc:
        raise ParseError(loc, str(exc)) from exc
    raise ParseError(f"{loc}.kind", f"unknown model kind {kind!r}")


def _parse_finite(expr, loc: str) -> FiniteModel:
    _obj(expr, loc, {"kind", "size", "one", "sum", "perp", "product"},
         {"size", "one", "sum", "perp"})
    n = _int(expr["size"], f"{loc}.size", 1)
    one = _int(expr["one"], f"{loc}.one")

    def triples(key):
        out = []
        for i, e in enumerate(_list(expr[key], f"{loc}.{key}")):
            if not isinstance(e, list) or len(e) != 3:
                raise ParseError(f"{loc}.{key}[{i}]", "entries are [i, j, k] triples")
            out.append(tuple(_int(x, f"{loc}.{key}[{i}]") for x in e))
        return out

    sums = triples("sum")
    seen = set()
    for i, (a, b, _) in enumerate(sums):
        pair = (min(a, b), max(a, b))
        if pair in seen:
            raise ParseError(f"{loc}.sum[{i}]", f"pair {pair} listed twice")
        seen.add(pair)
    perp = [_int(x, f"{loc}.perp[{i}]") for i, x in enumerate(_list(expr["perp"], f"{loc}.perp"))]
    try:
        table = FiniteEATable(n, one, sums, perp)
    except StructuralError as exc:
        raise ParseError(loc, str(exc)) from exc
    product = None
    if "product" in expr:
        product = [[None] * n for _ in range(n)]
        for i, (a, b, c) in enumerate(triples("product")):
            if not (a < n and b < n and c < n):
                raise ParseError(f"{loc}.product[{i}]", "index out of range")
            if product[a][b] is not None:
                raise ParseError(f"{loc}.product[{i}]", f"entry ({a},{b}) given twice")
            product[a][b] = c
        gaps = [(a, b) for a in range(n) for b in range(n) if product[a][b] is None]
        if gaps:
            raise ParseError(f"{loc}.product", f"table incomplete, first gap at {gaps[0]}")
    try:
        return Finite(table, product)
    except StructuralError as exc:
        raise ParseError(loc, str(exc)) from exc


def emit_model(m: Model) -> dict:
    if isinstance(m, FiniteModel):
        t = m.table
        out = {"kind": "finite", "size": t.size, "one": t.one,
               "sum": [list(x) for x in t.sum_triples()], "perp": list(t.perp)}
        if m.product_table is not None:
            n = t.size
            out["product"] = [[a, b, m.product_table[a][b]] for a in range(n) for b in range(n)]
        return out
    if isinstance(m, BooleanModel):
        return {"kind": "boolean", "atoms": m.atoms}
    if isinstance(m, IntervalModel):
        return {"kind": "interval"}
    if isinstance(m, MatrixIntervalModel):
        return {"kind": "matrix_interval"}
    if isinstance(m, DirectSumModel):
        return {"kind": "direct_sum", "parts": [emit_model(p) for p in m.parts]}
    if isinstance(m, HorizontalSumModel):
        return {"kind": "horizontal_sum", "parts": [emit_model(p) for p in m.parts]}
    if isinstance(m, CornerModel):
        return {"kind": "corner", "base": emit_model(m.base),
                "idempotent": emit_element(m.base, m.p)}
    raise TypeError(f"cannot serialize {m!r}")


# -- elements ------------------------------------------------------------------------

def parse_element(m: Model, x, loc: str = "element"):
    """Decode ``x`` as an element of ``m``; membership is checked."""
    e = _decode(m, x, loc)
    try:
        ok = m.contains(e)
    except TypeError as exc:
        raise ParseError(loc, str(exc)) from exc
    if not ok:
        raise ParseError(loc, f"{e!r} is not an element of {m!r}")
    return e


def _decode(m: Model, x, loc: str):
    if x in ("zero", "one"):
        return m.zero if x == "zero" else m.one
    if isinstance(x, dict) and len(x) == 1 and next(iter(x)) in ("zero", "one"):
        (k, v), = x.items()
        if v is not True:
            raise ParseError(loc, f"'{k}' alias must be true")
        return m.zero if k == "zero" else m.one
    if isinstance(m, CornerModel):
        return _decode(m.base, x, loc)
    if isinstance(m, FiniteModel):
        _obj(x, loc, {"idx"}, {"idx"})
        return _int(x["idx"], f"{loc}.idx")
    if isinstance(m, BooleanModel):
        _obj(x, loc, {"bits"}, {"bits"})
        items = [_int(b, f"{loc}.bits[{i}]") for i, b in enumerate(_list(x["bits"], f"{loc}.bits"))]
        return frozenset(items)
    if isinstance(m, IntervalModel):
        _obj(x, loc, {"rat"}, {"rat"})
        return parse_rational(x["rat"], f"{loc}.rat")
    if isinstance(m, MatrixIntervalModel):
        _obj(x, loc, {"mat"}, {"mat"})
        rows = _list(x["mat"], f"{loc}.mat")
        if len(rows) != 2 or any(not isinstance(r, list) or len(r) != 2 for r in rows):
            raise ParseError(f"{loc}.mat", "expected a 2x2 array")
        return Mat(*(parse_rational(v, f"{loc}.mat[{i}][{j}]")
                     for i, r in enumerate(rows) for j, v in enumerate(r)))
    if isinstance(m, DirectSumModel):
        _obj(x, loc, {"tuple"}, {"tuple"})
        items = _list(x["tuple"], f"{loc}.tuple")
        if len(items) != len(m.parts):
            raise ParseError(f"{loc}.tuple", f"expected {len(m.parts)} components")
        return tuple(_decode(p, v, f"{loc}.tuple[{i}]")
                     for i, (p, v) in enumerate(zip(m.parts, items)))
    if isinstance(m, HorizontalSumModel):
        _obj(x, loc, {"branch", "inner"}, {"branch", "inner"})
        k = _int(x["branch"], f"{loc}.branch")
        if k >= len(m.parts):
            raise ParseError(f"{loc}.branch", f"branch {k} out of range")
        inner = _decode(m.parts[k], x["inner"], f"{loc}.inner")
        return m.norm(k, inner)
    raise ParseError(loc, f"no element encoding for {m!r}")


def emit_element(m: Model, e):
    if isinstance(m, HorizontalSumModel) or isinstance(e, Branch):
        if e is ZERO:
            return "zero"
        if e is ONE:
            return "one"
        return {"branch": e.part, "inner": emit_element(m.parts[e.part], e.inner)}
    if isinstance(m, CornerModel):
        return emit_element(m.base, e)
    if isinstance(m, FiniteModel):
        return {"idx": e}
    if isinstance(m, BooleanModel):
        return {"bits": sorted(e)}
    if isinstance(m, IntervalModel):
        return {"rat": emit_rational(e)}
    if isinstance(m, MatrixIntervalModel):
        return {"mat": [[emit_rational(v) for v in row] for row in e.rows()]}
    if isinstance(m, DirectSumModel):
        return {"tuple": [emit_element(p, v) for p, v in zip(m.parts, e)]}
    raise TypeError(f"cannot serialize elements of {m!r}")


# -- documents -------------------------------------------------------------------------

def _json_location(text: str, exc: json.JSONDecodeError) -> str:
    return f"line {exc.lineno}, column {exc.colno}"


def parse_document(text: str) -> ModelDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(_json_location(text, exc), exc.msg) from exc
    doc = _obj(raw, "$", {"schema", "model", *_EXTRA_KEYS}, {"schema", "model"})
    if doc["schema"] != SCHEMA:
        raise ParseError("schema", f"unsupported schema {doc['schema']!r}, expected {SCHEMA}")
    model = parse_model(doc["model"])
    return ModelDocument(model, {k: doc[k] for k in _EXTRA_KEYS if k in doc})


def emit_document(doc: ModelDocument) -> str:
    out = {"schema": SCHEMA}
    out.update({k: doc.extra[k] for k in _EXTRA_KEYS if k in doc.extra})
    out["model"] = emit_model(doc.model)
    return json.dumps(out, indent=2, ensure_ascii=False) + "\n"


def load(path) -> ModelDocument:
    return parse_document(Path(path).read_text(encoding="utf-8"))


def dump(doc: ModelDocument, path) -> None:
    Path(path).write_text(emit_document(doc), encoding="utf-8")
