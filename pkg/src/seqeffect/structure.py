"""Scalar actions, convexity classification and the block decomposition.

Composite models are split into a Boolean block, a convex block and a
purely a-convex block by flattening direct sums (and corners of direct
sums) into leaves, classifying each leaf, and regrouping.  The result is
then verified: the three witnesses must be orthogonal central idempotents
summing to 1, and the rearrangement map must preserve sums and products.
"""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .core import ValidationReport, boolean_verdict
from .models import (ONE, ZERO, Boolean, BooleanModel, CornerModel,
                     DirectSum, DirectSumModel, FiniteModel, HorizontalSumModel,
                     Interval, IntervalModel, Model, NoProductError,
                     UnsupportedError, trivial)
from .models.base import SMALL_DENOMINATORS, dedupe
from .sequential import (DEFAULT, SeaCheckConfig, center, check_sea_axioms,
                         commutes, halves_of, is_idempotent, pool)

BASE_SCALARS = [Fraction(0), Fraction(1), Fraction(1, 2), Fraction(1, 3),
                Fraction(2, 3), Fraction(1, 4), Fraction(3, 4)]


def scalar_sample(cfg: SeaCheckConfig = DEFAULT, extra: int = 5) -> list[Fraction]:
    rng = random.Random(cfg.seed)
    out = list(BASE_SCALARS)
    while len(out) < len(BASE_SCALARS) + extra:
        den = rng.choice(SMALL_DENOMINATORS)
        q = Fraction(rng.randint(1, den - 1), den)
        if q not in out:
            out.append(q)
    return out


def _halves_first(m: Model, cfg) -> list:
    els, _ = pool(m, cfg)
    try:
        hs = halves_of(m, m.one)
    except UnsupportedError:
        hs = []
    return dedupe(hs + list(els))


# -- a-convex actions -------------------------------------------------------

@dataclass
class AConvexAction:
    """A scalar action ``λ·a`` of rational ``λ ∈ [0,1]`` on ``model``."""

    model: Model
    rule: Callable = field(repr=False)
    unit_image: str = ""
    phi: Callable | None = field(default=None, repr=False)

    def __call__(self, lam, a):
        lam = Fraction(lam)
        if not 0 <= lam <= 1:
            raise ValueError(f"scalar {lam} lies outside [0, 1]")
        return self.rule(lam, a)


def check_aconvex_action(act: AConvexAction, cfg: SeaCheckConfig = DEFAULT,
                         scalars: list | None = None) -> ValidationReport:
    """The three a-convex axioms; ``properties['convex']`` reports whether
    ``λ·(a⊻b) = λ·a ⊻ λ·b`` also holds, with a witness if it does not."""
    m = act.model
    rep = ValidationReport(verbose=cfg.verbose)
    scalars = scalar_sample(cfg) if scalars is None else [Fraction(s) for s in scalars]
    for lam in scalars:
        if not 0 <= lam <= 1:
            raise ValueError(f"scalar {lam} lies outside [0, 1]")
    els = _halves_first(m, cfg)
    for a in els:
        rep.count("unit")
        if act(1, a) != a:
            rep.add("unit", (a,), f"1·a = {act(1, a)!r}")
        for lam in scalars:
            la = act(lam, a)
            rep.count("closure")
            if not m.contains(la):
                rep.add("closure", (lam, a))
            for mu in scalars:
                rep.count("λ·(μ·a) = (λμ)·a")
                if act(lam, act(mu, a)) != act(lam * mu, a):
                    rep.add("λ·(μ·a) = (λμ)·a", (lam, mu, a))
                if lam + mu <= 1:
                    rep.count("λ·a ⊻ μ·a = (λ+μ)·a")
                    s = m.sum(la, act(mu, a))
                    if s is None or s != act(lam + mu, a):
                        rep.add("λ·a ⊻ μ·a = (λ+μ)·a", (lam, mu, a), f"sum {s!r}")
    witness = None
    pairs = ((a, b) for a in els for b in els if m.sum(a, b) is not None)
    for a, b in pairs:
        for lam in scalars:
            rep.count("convexity")
            lhs = act(lam, m.sum(a, b))
            rhs = m.sum(act(lam, a), act(lam, b))
            if lhs != rhs:
                witness = {"lambda": lam, "a": a, "b": b, "lhs": lhs, "rhs": rhs}
                break
        if witness:
            break
    rep.properties["convex"] = witness is None
    rep.properties["convexity_witness"] = witness
    return rep


def action_from_additive_map(m: Model, unit_image_rule: Callable, description: str = "",
                             cfg: SeaCheckConfig = DEFAULT) -> AConvexAction:
    """The action ``λ·a = a∘φ(λ)`` for an additive unital ``φ: [0,1] → E``."""
    if not m.has_product:
        raise NoProductError(m)
    scalars = scalar_sample(cfg)
    phi = unit_image_rule
    if phi(Fraction(1)) != m.one:
        raise ValueError(f"φ(1) = {phi(Fraction(1))!r} is not 1")
    for lam, mu in itertools.product(scalars, scalars):
        if lam + mu <= 1:
            s = m.sum(phi(lam), phi(mu))
            if s is None or s != phi(lam + mu):
                raise ValueError(f"φ is not additive: φ({lam}) ⊻ φ({mu}) = {s!r}, "
                                 f"φ({lam + mu}) = {phi(lam + mu)!r}")
    act = AConvexAction(m, lambda lam, a: m.product(a, phi(lam)),
                        description or "λ ↦ φ(λ)", phi)
    rep = check_aconvex_action(act, cfg)
    if not rep.ok:
        raise AssertionError(f"action from φ fails the a-convex axioms: {rep.violations}")
    return act


def standard_action(m: Model, branch: int = 0, cfg: SeaCheckConfig = DEFAULT) -> AConvexAction:
    """The action from the family's built-in map ``λ ↦ λ·1`` (``branch``
    picks the summand receiving ``λ·1`` in a horizontal sum)."""
    return action_from_additive_map(m, lambda lam: m.unit_map(lam, branch),
                                    f"λ·1 = {m.unit_map(Fraction(1, 2), branch)!r} at λ = 1/2",
                                    cfg)


# -- classification ----------------------------------------------------------

class Convexity(enum.Enum):
    CONVEX = "Convex"
    PURELY_ACONVEX = "PurelyAConvex"
    ACONVEX_MIXED = "AConvexMixed"
    BOOLEAN = "Boolean"
    NOT_ACONVEX = "NotAConvex"


@dataclass
class Classification:
    kind: Convexity
    halves: list
    center: object = None
    evidence: dict = field(default_factory=dict)


def _center_all_idempotent(m: Model, Z, cfg) -> tuple[bool, object]:
    test = Z.members if Z.members is not None else [e for e in pool(m, cfg)[0] if Z.contains(e)]
    bad = next((e for e in test if not is_idempotent(m, e)), None)
    return bad is None, bad


def classify_convexity(m: Model, cfg: SeaCheckConfig = DEFAULT) -> Classification:
    """Decide the convexity type from the halves of 1 and the center."""
    if not m.has_product:
        raise NoProductError(m)
    hs = halves_of(m, m.one)
    els, exhaustive = pool(m, cfg)
    ev: dict = {"halves_of_one": len(hs), "exhaustive": exhaustive}
    if not hs:
        bad = next((a for a in els if not is_idempotent(m, a)), None)
        ev["all_idempotent"] = bad is None
        if bad is None:
            return Classification(Convexity.BOOLEAN, hs, evidence=ev)
        ev["non_idempotent"] = bad
        return Classification(Convexity.NOT_ACONVEX, hs, evidence=ev)
    if len(hs) == 1:
        h = hs[0]
        bad = next((a for a in els if not commutes(m, h, a)), None)
        ev["half_central"] = bad is None
        if bad is None:
            return Classification(Convexity.CONVEX, hs, evidence=ev)
        ev["contradiction"] = f"unique half {h!r} does not commute with {bad!r}"
        return Classification(Convexity.NOT_ACONVEX, hs, evidence=ev)
    Z = center(m, cfg)
    boolean_center, bad = _center_all_idempotent(m, Z, cfg)
    ev["center"] = Z.description
    ev["center_boolean"] = boolean_center
    if boolean_center:
        return Classification(Convexity.PURELY_ACONVEX, hs, Z, ev)
    central_halves = [h for h in hs if Z.contains(h)]
    if central_halves:
        ev["contradiction"] = f"central half {central_halves[0]!r} among several halves"
    ev["non_idempotent_central"] = bad
    return Classification(Convexity.ACONVEX_MIXED, hs, Z, ev)


# -- flattening composite models ----------------------------------------------

class _Flat:
    """Leaves of a composite model with converters to and from flat tuples."""

    def __init__(self, m: Model):
        self.model = m
        self.leaves, self.to_flat, self.from_flat = _flatten(m)


def _flatten(m: Model):
    if isinstance(m, DirectSumModel):
        subs = [_flatten(p) for p in m.parts]
        leaves = [leaf for s in subs for leaf in s[0]]
        counts = [len(s[0]) for s in subs]

        def to_flat(e):
            return tuple(x for s, c in zip(subs, e) for x in s[1](c))

        def from_flat(t):
            out, i = [], 0
            for s, k in zip(subs, counts):
                out.append(s[2](tuple(t[i:i + k])))
                i += k
            return tuple(out)
        return leaves, to_flat, from_flat
    if isinstance(m, CornerModel):
        base, p = m.base, m.p
        if p == base.one:
            return _flatten(base)
        if p == base.zero:
            return [], (lambda e: ()), (lambda t: base.zero)
        if isinstance(base, CornerModel):
            return _flatten(CornerModel(base.base, p))
        if isinstance(base, DirectSumModel):
            parts = [CornerModel(q, x) for q, x in zip(base.parts, p)]
            return _flatten(DirectSumModel(parts))
    return [m], (lambda e: (e,)), (lambda t: t[0])


# -- decomposition ---------------------------------------------------------------

BLOCKS = ("boolean", "convex", "aconvex")
_KIND_BLOCK = {Convexity.BOOLEAN: "boolean", Convexity.CONVEX: "convex",
               Convexity.PURELY_ACONVEX: "aconvex"}


@dataclass
class DecompositionReport:
    boolean_block: Model
    convex_block: Model
    aconvex_block: Model
    witnesses: dict
    evidence: dict = field(default_factory=dict)
    leaves: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.evidence.values())

    def block(self, name: str) -> Model:
        return getattr(self, f"{name}_block")


def _block_model(leaves: list) -> Model:
    if not leaves:
        return trivial()
    if len(leaves) == 1:
        return leaves[0]
    return DirectSum(leaves)


def decompose(m: Model, cfg: SeaCheckConfig = DEFAULT) -> DecompositionReport:
    """Split ``m`` into Boolean ⊕ convex ⊕ purely a-convex blocks."""
    if not m.has_product:
        raise NoProductError(m)
    if isinstance(m, FiniteModel) or (m.finite and isinstance(m, CornerModel)
                                     and not isinstance(m.base, DirectSumModel)):
        return _decompose_finite(m, cfg)
    flat = _Flat(m)
    kinds = []
    for leaf in flat.leaves:
        cls = classify_convexity(leaf, cfg)
        if cls.kind not in _KIND_BLOCK:
            raise UnsupportedError(f"cannot decompose leaf {leaf!r}: classified {cls.kind.value}")
        kinds.append(_KIND_BLOCK[cls.kind])
    groups = {b: [leaf for leaf, k in zip(flat.leaves, kinds) if k == b] for b in BLOCKS}
    witnesses = {b: flat.from_flat(tuple(leaf.one if k == b else leaf.zero
                                         for leaf, k in zip(flat.leaves, kinds)))
                 for b in BLOCKS}
    rep = DecompositionReport(_block_model(groups["boolean"]), _block_model(groups["convex"]),
                              _block_model(groups["aconvex"]), witnesses,
                              leaves=[(repr(leaf), k) for leaf, k in zip(flat.leaves, kinds)])

    def project(e, b):
        t = flat.to_flat(e)
        xs = [x for x, k in zip(t, kinds) if k == b]
        if not xs:
            return 0
        return xs[0] if len(xs) == 1 else tuple(xs)

    def rearrange(e):
        return tuple(project(m.product(witnesses[b], e), b) for b in BLOCKS)

    _verify(m, rep, rearrange, cfg)
    return rep


def _decompose_finite(m: Model, cfg) -> DecompositionReport:
    sea = check_sea_axioms(m, cfg)
    if not sea.ok:
        raise UnsupportedError(f"{m!r} is not a SEA: {[str(v) for v in sea.violations][:3]}")
    rep = DecompositionReport(m, trivial(), trivial(),
                              {"boolean": m.one, "convex": m.zero, "aconvex": m.zero},
                              leaves=[(repr(m), "boolean")])
    rep.evidence["all elements idempotent"] = all(is_idempotent(m, a) for a in m.elements())
    if isinstance(m, FiniteModel):
        verdict, info = boolean_verdict(m.table)
        rep.evidence["Boolean algebra"] = verdict
        rep.notes.append(f"Boolean algebra check: {info}")
    _verify(m, rep, lambda e: (m.product(m.one, e), 0, 0), cfg)
    return rep


def _verify(m: Model, rep: DecompositionReport, rearrange, cfg) -> None:
    els, _ = pool(m, cfg)
    ws = [rep.witnesses[b] for b in BLOCKS]
    ev = rep.evidence
    ev["witnesses idempotent"] = all(is_idempotent(m, p) for p in ws)
    ev["witnesses central"] = all(commutes(m, p, a) for p in ws for a in els)
    ev["witnesses orthogonal"] = all(
        m.product(p, q) == m.zero and m.sum(p, q) is not None
        for p, q in itertools.combinations(ws, 2))
    total = m.sum(m.sum(ws[0], ws[1]) or m.zero, ws[2]) if m.sum(ws[0], ws[1]) is not None else None
    ev["witnesses sum to 1"] = total == m.one
    blocks = [rep.block(b) for b in BLOCKS]
    ds = DirectSumModel(blocks)
    images = {}
    injective = members = sums = products = recombine = True
    for a in els:
        img = rearrange(a)
        if img in images and images[img] != a:
            injective = False
        images[img] = a
        if not ds.contains(img):
            members = False
        parts = [m.product(p, a) for p in ws]
        s = m.sum(parts[0], parts[1])
        s = None if s is None else m.sum(s, parts[2])
        if s != a:
            recombine = False
    for a, b in itertools.product(els, els):
        ia, ib = rearrange(a), rearrange(b)
        s = m.sum(a, b)
        t = ds.sum(ia, ib)
        if (s is None) != (t is None) or (s is not None and rearrange(s) != t):
            sums = False
        if rearrange(m.product(a, b)) != ds.product(ia, ib):
            products = False
    ev["rearrangement lands in blocks"] = members
    ev["rearrangement injective"] = injective
    ev["a = p_bool∘a ⊻ p_conv∘a ⊻ p_ac∘a"] = recombine
    ev["rearrangement preserves sums"] = sums
    ev["rearrangement preserves products"] = products
    _block_evidence(rep, cfg)


def _block_evidence(rep: DecompositionReport, cfg) -> None:
    ev = rep.evidence
    B = rep.boolean_block
    els, _ = pool(B, cfg)
    ev["boolean block all idempotent"] = all(is_idempotent(B, a) for a in els)
    C = rep.convex_block
    if C.cardinality() == 1:
        ev["convex block has a unique central half"] = True
    else:
        hs = halves_of(C, C.one)
        els, _ = pool(C, cfg)
        ev["convex block has a unique central half"] = (
            len(hs) == 1 and all(commutes(C, hs[0], a) for a in els))
    A = rep.aconvex_block
    if A.cardinality() == 1:
        ev["aconvex block center Boolean"] = True
    else:
        ev["aconvex block center Boolean"] = _center_all_idempotent(A, center(A, cfg), cfg)[0]


# -- commuting halves -------------------------------------------------------------

@dataclass
class CommutingHalves:
    holds: bool
    witness: tuple | None
    classification: Convexity | None = None
    agrees: bool | None = None


def check_commuting_halves(m: Model, cfg: SeaCheckConfig = DEFAULT) -> CommutingHalves:
    """Search for ``a | c⊻c`` with ``a`` not commuting with ``c``.

    On a-convex models the answer is compared with the classification:
    commuting halves should hold exactly for the convex ones.
    """
    if not m.has_product:
        raise NoProductError(m)
    els = _halves_first(m, cfg)
    witness = None
    for c in els:
        b = m.sum(c, c)
        if b is None:
            continue
        for a in els:
            if commutes(m, a, b) and not commutes(m, a, c):
                witness = (a, b, c)
                break
        if witness:
            break
    res = CommutingHalves(witness is None, witness)
    try:
        kind = classify_convexity(m, cfg).kind
    except UnsupportedError:
        return res
    res.classification = kind
    if kind in (Convexity.CONVEX, Convexity.PURELY_ACONVEX, Convexity.ACONVEX_MIXED):
        res.agrees = res.holds == (kind is Convexity.CONVEX)
    return res


# -- associativity ------------------------------------------------------------------

@dataclass
class AssociativityReport:
    associative: bool
    commutative: bool
    idempotents: list
    idempotents_central: bool | None
    factor_classification: str | None = None
    factor_branches: int | None = None
    witnesses: dict = field(default_factory=dict)
    exhaustive: bool = False


def analyze_associativity(m: Model, cfg: SeaCheckConfig = DEFAULT) -> AssociativityReport:
    if not m.has_product:
        raise NoProductError(m)
    els, exhaustive = pool(m, cfg)
    P = m.product
    assoc = next(((a, b, c) for a, b, c in itertools.product(els, els, els)
                  if P(a, P(b, c)) != P(P(a, b), c)), None)
    comm = next(((a, b) for a, b in itertools.product(els, els) if P(a, b) != P(b, a)), None)
    idem = [p for p in els if is_idempotent(m, p)]
    rep = AssociativityReport(assoc is None, comm is None, idem, None, exhaustive=exhaustive)
    rep.witnesses = {"non_associative": assoc, "non_commuting": comm}
    if rep.associative:
        bad = next(((p, a) for p in idem for a in els if not commutes(m, p, a)), None)
        rep.idempotents_central = bad is None
        rep.witnesses["non_central_idempotent"] = bad
    try:
        Z = center(m, cfg)
        trivial_center = Z.members is not None and set(Z.members) == {m.zero, m.one}
        has_halves = bool(halves_of(m, m.one))
    except UnsupportedError:
        trivial_center = has_halves = False
    if rep.associative and trivial_center and has_halves:
        if isinstance(m, HorizontalSumModel) and m.is_interval_sum():
            k = len(m.parts)
            rep.factor_classification = f"horizontal sum of {k} intervals"
            rep.factor_branches = k
        else:
            rep.factor_classification = "unclassified factor"
    return rep


# -- bicommutant of a single element --------------------------------------------------

@dataclass
class BicommutantRepresentation:
    """``{a}''`` split as an interval part ⊕ a Boolean part.

    ``interval_idempotent`` is the central idempotent cutting out the
    interval part; its complement cuts out the Boolean part.
    """

    interval_part: Model | None
    boolean_part: Model | None
    boolean_members: list
    interval_idempotent: object


def bicommutant_representation(m: Model, a) -> BicommutantRepresentation:
    if not m.contains(a):
        raise ValueError(f"{a!r} is not an element of {m!r}")
    if isinstance(m, (BooleanModel, FiniteModel)):
        members = dedupe([m.zero, a, m.perp(a), m.one])
        return BicommutantRepresentation(None, Boolean(1 if len(members) == 2 else 2),
                                         members, m.zero)
    if isinstance(m, IntervalModel):
        return BicommutantRepresentation(Interval(), None, [], m.one)
    if isinstance(m, HorizontalSumModel) and m.is_interval_sum():
        if a is ZERO or a is ONE:
            return BicommutantRepresentation(None, Boolean(1), [ZERO, ONE], ZERO)
        return BicommutantRepresentation(m.parts[a.part], None, [], ONE)
    if isinstance(m, DirectSumModel):
        subs = [bicommutant_representation(p, x) for p, x in zip(m.parts, a)]
        ints = [s.interval_part for s in subs if s.interval_part is not None]
        bools = [s for s in subs if s.boolean_part is not None]
        members = [tuple(t) for t in itertools.product(
            *[s.boolean_members if s.boolean_part is not None else [p.zero]
              for s, p in zip(subs, m.parts)])]
        return BicommutantRepresentation(
            (ints[0] if len(ints) == 1 else DirectSum(ints)) if ints else None,
            (bools[0].boolean_part if len(bools) == 1
             else DirectSum([s.boolean_part for s in bools])) if bools else None,
            members, tuple(s.interval_idempotent for s in subs))
    raise UnsupportedError(f"no bicommutant representation registered for {m!r}")

