"""Regenerate the JSON documents under corpus/.

Malformed documents are written verbatim since they cannot be produced by
the emitter.  Run from the repository root: ``python tools/build_corpus.py``.
"""
from pathlib import Path

from seqeffect.core import FiniteEATable, boolean_table, chain, diamond
from seqeffect.io import ModelDocument, dump
from seqeffect.models import (ONE, Boolean, Corner, DirectSum, Finite, HorizontalSum,
                              Interval, MatrixInterval, meet_product)

ROOT = Path(__file__).resolve().parent.parent / "corpus"

H = HorizontalSum([Interval(), Interval()])

VALID = {
    "boolean1": (Boolean(1), "meet product on one atom"),
    "boolean2": (Boolean(2), "meet product on two atoms"),
    "boolean3": (Boolean(3), "meet product on three atoms"),
    "two_element": (Finite(chain(1), meet_product(chain(1))), "{0, 1}; every entry forced"),
    "boolean2_table": (Finite(boolean_table(2), meet_product(boolean_table(2))),
                       "Boolean 2^2 as an explicit table with the meet"),
    "interval": (Interval(), "rational unit interval, product = multiplication"),
    "matrix_interval": (MatrixInterval(), "2x2 matrices with equal column sums"),
    "horizontal_sum": (H, "two intervals glued at 0 and 1; left-keeping product"),
    "horizontal_sum3": (HorizontalSum([Interval()] * 3), "three glued intervals"),
    "direct_sum_intervals": (DirectSum([Interval(), Interval()]), "convex"),
    "direct_sum_b1_interval": (DirectSum([Boolean(1), Interval()]), ""),
    "direct_sum_three_blocks": (DirectSum([Boolean(3), Interval(), H]),
                                "one part per decomposition block"),
    "corner_boolean3": (Corner(Boolean(3), frozenset({0, 1})), "corner below two atoms"),
    "corner_direct_sum": (Corner(DirectSum([Boolean(2), Interval(), H]),
                                 (frozenset({1}), Interval().one, ONE)),
                          "corner of a direct sum at a central idempotent"),
    "corner_nested": (Corner(Corner(DirectSum([Boolean(3), Interval()]),
                                    (frozenset({0, 1}), Interval().one)),
                             (frozenset({0}), Interval().one)), "corner of a corner"),
}

# effect algebras without a product, used by `search`
TABLES = {
    "mv1": (chain(1), 1), "mv2": (chain(2), 0), "mv3": (chain(3), 0), "mv4": (chain(4), 0),
    "boolean_table1": (boolean_table(1), 1), "boolean_table2": (boolean_table(2), 1),
    "boolean_table3": (boolean_table(3), 1), "mo2": (diamond(), 0),
}

COUNTER = {
    "chain3_half_squared_zero": (Finite(chain(2), [[0, 0, 0], [0, 0, 1], [0, 1, 2]]),
                                 "h∘h = 0 breaks additivity: h∘(h⊻h) = h but h∘h⊻h∘h = 0"),
    "chain3_half_idempotent": (Finite(chain(2), [[0, 0, 0], [0, 1, 1], [0, 1, 2]]),
                               "h∘h = h: h∘h⊻h∘h = 1 ≠ h∘1"),
    "not_an_effect_algebra": (Finite(FiniteEATable(3, 2, [(0, 0, 0), (0, 1, 1), (0, 2, 2),
                                                          (1, 1, 2), (1, 2, 2)],
                                                   [2, 1, 0])),
                              "1 ⊻ a is defined for a ≠ 0"),
}

MALFORMED = {
    "zero_denominator.json":
        '{"schema": 1, "model": {"kind": "corner", "base": {"kind": "interval"},'
        ' "idempotent": {"rat": "2/0"}}}\n',
    "non_canonical_rational.json":
        '{"schema": 1, "model": {"kind": "corner", "base": {"kind": "interval"},'
        ' "idempotent": {"rat": "2/2"}}}\n',
    "unknown_kind.json": '{"schema": 1, "model": {"kind": "hilbert_space"}}\n',
    "wrong_schema.json": '{"schema": 2, "model": {"kind": "interval"}}\n',
    "syntax_error.json": '{"schema": 1, "model": {"kind": "interval"}\n',
    "degenerate_horizontal_part.json":
        '{"schema": 1, "model": {"kind": "horizontal_sum",'
        ' "parts": [{"kind": "interval"}, {"kind": "boolean", "atoms": 1}]}}\n',
    "corner_not_idempotent.json":
        '{"schema": 1, "model": {"kind": "corner", "base": {"kind": "interval"},'
        ' "idempotent": {"rat": "1/2"}}}\n',
    "sum_pair_twice.json":
        '{"schema": 1, "model": {"kind": "finite", "size": 2, "one": 1,'
        ' "sum": [[0, 0, 0], [0, 1, 1], [1, 0, 1]], "perp": [1, 0]}}\n',
    "incomplete_product.json":
        '{"schema": 1, "model": {"kind": "finite", "size": 2, "one": 1,'
        ' "sum": [[0, 0, 0], [0, 1, 1]], "perp": [1, 0], "product": [[0, 0, 0]]}}\n',
}


def main() -> None:
    for sub in ("valid", "search", "counterexamples", "malformed"):
        (ROOT / sub).mkdir(parents=True, exist_ok=True)
    for name, (m, note) in VALID.items():
        extra = {"name": name, "expect": {"check": 0}}
        if note:
            extra["note"] = note
        dump(ModelDocument(m, extra), ROOT / "valid" / f"{name}.json")
    for name, (t, count) in TABLES.items():
        extra = {"name": name, "expect": {"check": 0, "search_solutions": count}}
        dump(ModelDocument(Finite(t), extra), ROOT / "search" / f"{name}.json")
    for name, (m, note) in COUNTER.items():
        extra = {"name": name, "note": note, "expect": {"check": 1}}
        dump(ModelDocument(m, extra), ROOT / "counterexamples" / f"{name}.json")
    for name, text in MALFORMED.items():
        (ROOT / "malformed" / name).write_text(text, encoding="utf-8")


if __name__ == "__main__":
    main()
