"""Model families, their elements, and the basic effect-algebra operations.

Families: explicit finite tables, ``Boolean(n)``, the rational ``Interval``,
the 2x2 ``MatrixInterval``, and the constructions ``DirectSum``,
``HorizontalSum`` and ``Corner``.  All arithmetic is exact.

Element values per family:

=================  ============================================
Finite             ``int`` index
Boolean            ``frozenset`` of atom indices
Interval           ``Fraction``
MatrixInterval     :class:`Mat`
HorizontalSum      ``ZERO``, ``ONE`` or :class:`Branch`
DirectSum          ``tuple`` of part elements
Corner             elements of the base below ``p``
=================  ============================================
"""
from __future__ import annotations

import itertools
import random

from ..core import ValidationReport, trivial_table
from .base import (MAT_ID, MAT_ZERO, ONE, ZERO, Branch, Elem, Mat, Model,
                   NoProductError, PreconditionError, UnsupportedError)
from .compound import CornerModel, DirectSumModel, HorizontalSumModel
from .finite import BooleanModel, FiniteModel, bits, meet_product
from .scalar import (IntervalModel, MatrixIntervalModel, UpperBoundDemo,
                     minimal_upper_bound_demo, rational_sqrt, tau)

__all__ = [
    "Model", "Elem", "Mat", "Branch", "ZERO", "ONE", "MAT_ZERO", "MAT_ID",
    "FiniteModel", "BooleanModel", "IntervalModel", "MatrixIntervalModel",
    "DirectSumModel", "HorizontalSumModel", "CornerModel",
    "Finite", "Boolean", "Interval", "MatrixInterval", "DirectSum",
    "HorizontalSum", "Corner", "trivial",
    "UnsupportedError", "PreconditionError", "NoProductError", "CarrierTooLarge",
    "membership", "partial_sum", "complement", "seq_product", "tau",
    "enumerate_or_sample", "check_model_ea_axioms", "bits", "meet_product",
    "minimal_upper_bound_demo", "UpperBoundDemo", "rational_sqrt",
]


class CarrierTooLarge(ValueError):
    pass


Finite = FiniteModel
Boolean = BooleanModel
DirectSum = DirectSumModel
HorizontalSum = HorizontalSumModel
Corner = CornerModel


def Interval() -> IntervalModel:
    return IntervalModel()


def MatrixInterval() -> MatrixIntervalModel:
    return MatrixIntervalModel()


def trivial() -> FiniteModel:
    """The one-element SEA, used for empty decomposition blocks."""
    return FiniteModel(trivial_table(), [[0]])


def membership(m: Model, e: Elem) -> bool:
    """Whether ``e`` is a carrier element; ``TypeError`` on a family mismatch."""
    return m.contains(e)


def partial_sum(m: Model, a: Elem, b: Elem) -> Elem | None:
    """``a ⊻ b``, or ``None`` when the pair is not summable."""
    return m.sum(a, b)


def complement(m: Model, a: Elem) -> Elem:
    return m.perp(a)


def seq_product(m: Model, a: Elem, b: Elem) -> Elem:
    if not m.has_product:
        raise NoProductError(m)
    return m.product(a, b)


def enumerate_or_sample(m: Model, budget: int, seed: int = 0) -> list:
    """All elements of a finite carrier, or a deterministic sample.

    Finite carriers larger than ``budget`` raise :class:`CarrierTooLarge`
    rather than being truncated.  Samples always start with 0, 1 and the
    halves of 1 and never exceed ``budget`` elements.
    """
    if budget < 1:
        raise ValueError("budget must be positive")
    if m.finite:
        n = m.cardinality()
        if n > budget:
            raise CarrierTooLarge(f"{m!r} has {n} elements, budget is {budget}")
        return m.elements()
    out = m.sample(budget, random.Random(seed))
    bad = [e for e in out if not m.contains(e)]
    if bad:
        raise AssertionError(f"sampler produced non-members of {m!r}: {bad[:3]}")
    return out


def _pool(m: Model, budget: int, seed: int) -> tuple[list, bool]:
    if m.finite and m.cardinality() <= max(budget, 4096):
        return m.elements(), True
    return m.sample(budget, random.Random(seed)), False


def check_model_ea_axioms(m: Model, budget: int = 24, seed: int = 0) -> ValidationReport:
    """The effect-algebra axioms on all elements (finite) or a sample.

    Also checks closure: sums and complements of members are members.
    """
    rep = ValidationReport()
    pool, exhaustive = _pool(m, budget, seed)
    rep.notes.append(("exhaustive" if exhaustive else "sampled") + f" over {len(pool)} elements")
    one, zero = m.one, m.zero
    for a in pool:
        rep.count("zero")
        if m.sum(a, zero) != a or m.sum(zero, a) != a:
            rep.add("zero", (a,))
        c = m.perp(a)
        rep.count("complement")
        if not m.contains(c) or m.sum(a, c) != one:
            rep.add("unique complement", (a,), f"a ⊻ a⊥ = {m.sum(a, c)!r}")
        rep.count("one-summability")
        if a != zero and m.sum(a, one) is not None:
            rep.add("one-summability", (a,))
    for a, b in itertools.product(pool, pool):
        s = m.sum(a, b)
        rep.count("commutativity")
        if s != m.sum(b, a):
            rep.add("commutativity", (a, b))
        if s is not None:
            rep.count("closure")
            if not m.contains(s):
                rep.add("closure", (a, b), f"sum {s!r} is not a member")
            if s == one and b != m.perp(a):
                rep.add("unique complement", (a, b), "second complement")
    for a, b in itertools.product(pool, pool):
        s = m.sum(a, b)
        if s is None:
            continue
        for c in pool:
            t = m.sum(s, c)
            if t is None:
                continue
            rep.count("associativity")
            bc = m.sum(b, c)
            if bc is None or m.sum(a, bc) != t:
                rep.add("associativity", (a, b, c))
    return rep
