from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .base import (ONE, ZERO, Branch, Model, PreconditionError, UnsupportedError,
                   dedupe)
from .scalar import IntervalModel


def _product_of(lists):
    return [tuple(t) for t in itertools.product(*lists)]


class DirectSumModel(Model):
    """Cartesian product with componentwise operations; elements are tuples."""

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise ValueError("a direct sum needs at least one part")
        self.parts = parts
        self.finite = all(p.finite for p in parts)
        self.has_product = all(p.has_product for p in parts)
        self.zero = tuple(p.zero for p in parts)
        self.one = tuple(p.one for p in parts)

    def check(self, e) -> None:
        if not isinstance(e, tuple) or len(e) != len(self.parts):
            raise TypeError(f"direct-sum elements are {len(self.parts)}-tuples, got {e!r}")
        for p, x in zip(self.parts, e):
            p.check(x)

    def contains(self, e) -> bool:
        self.check(e)
        return all(p.contains(x) for p, x in zip(self.parts, e))

    def sum(self, a, b):
        out = []
        for p, x, y in zip(self.parts, a, b):
            s = p.sum(x, y)
            if s is None:
                return None
            out.append(s)
        return tuple(out)

    def perp(self, a):
        return tuple(p.perp(x) for p, x in zip(self.parts, a))

    def leq(self, a, b) -> bool:
        return all(p.leq(x, y) for p, x, y in zip(self.parts, a, b))

    def ominus(self, b, a):
        out = []
        for p, y, x in zip(self.parts, b, a):
            d = p.ominus(y, x)
            if d is None:
                return None
            out.append(d)
        return tuple(out)

    def product(self, a, b):
        return tuple(p.product(x, y) for p, x, y in zip(self.parts, a, b))

    def cardinality(self):
        if not self.finite:
            return None
        n = 1
        for p in self.parts:
            n *= p.cardinality()
        return n

    def elements(self) -> list:
        if not self.finite:
            return super().elements()
        return _product_of(p.elements() for p in self.parts)

    def boundary(self) -> list:
        out = []
        for i, p in enumerate(self.parts):
            for x in p.boundary() + p.mandated():
                e = list(self.zero)
                e[i] = x
                out.append(tuple(e))
        return dedupe(out)

    def draw(self, rng: random.Random):
        out = []
        for p in self.parts:
            if rng.random() < 0.3:
                out.append(rng.choice(p.mandated()))
            else:
                out.append(p.draw(rng))
        return tuple(out)

    def indicator(self, which) -> tuple:
        """The idempotent with 1 in the components listed in ``which``
        (a single index or a collection of them)."""
        if isinstance(which, int):
            which = (which,)
        return tuple(p.one if i in which else p.zero for i, p in enumerate(self.parts))

    def center_rule(self):
        rules = [p.center_rule() for p in self.parts]
        preds = [r[0] for r in rules]
        members = None
        if all(r[2] is not None for r in rules):
            members = _product_of(r[2] for r in rules)
        desc = " ⊕ ".join(f"({r[1]})" for r in rules)
        return ((lambda e: all(f(x) for f, x in zip(preds, e))), desc, members,
                self._pad([r[3] for r in rules]))

    def commutant_rule(self, S):
        rules = [p.commutant_rule([s[i] for s in S]) for i, p in enumerate(self.parts)]
        preds = [r[0] for r in rules]
        members = None
        if all(r[2] is not None for r in rules):
            members = _product_of(r[2] for r in rules)
        desc = " ⊕ ".join(f"({r[1]})" for r in rules)
        return ((lambda e: all(f(x) for f, x in zip(preds, e))), desc, members,
                self._pad([r[3] for r in rules]))

    def _pad(self, spanning_per_part) -> list:
        out = []
        for i, span in enumerate(spanning_per_part):
            for g in span:
                e = list(self.zero)
                e[i] = g
                out.append(tuple(e))
        return out

    def floor(self, a):
        return tuple(p.floor(x) for p, x in zip(self.parts, a))

    def halves(self, a) -> list:
        return _product_of(p.halves(x) for p, x in zip(self.parts, a))

    def sqrt(self, a):
        roots = [p.sqrt(x) for p, x in zip(self.parts, a)]
        return tuple(r for r, _ in roots), all(ex for _, ex in roots)

    def divide(self, a, n: int):
        return tuple(p.divide(x, n) for p, x in zip(self.parts, a))

    def unit_map(self, lam, branch: int = 0):
        return tuple(p.unit_map(lam, branch) for p in self.parts)

    def __repr__(self) -> str:
        return f"DirectSum({', '.join(map(repr, self.parts))})"

    def __eq__(self, other) -> bool:
        return isinstance(other, DirectSumModel) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(("DirectSum", self.parts))


class HorizontalSumModel(Model):
    """Disjoint union of the parts with all zeros and all ones identified.

    Elements are ``ZERO``, ``ONE`` or ``Branch(k, x)`` with ``x`` a
    non-extreme element of part ``k``.  Sums only exist inside one part.
    When every part is the interval, the product keeps the branch of the
    left factor: ``(λ, A) ∘ (μ, B) = (λμ, A)``.
    """

    zero = ZERO
    one = ONE

    def __init__(self, parts):
        parts = tuple(parts)
        if len(parts) < 2:
            raise ValueError("a horizontal sum needs at least two parts")
        for i, p in enumerate(parts):
            n = p.cardinality()
            if n is not None and n < 3:
                raise ValueError(f"horizontal-sum part {i} ({p!r}) has only {n} "
                                 "elements; degenerate parts are rejected")
        self.parts = parts
        self.finite = all(p.finite for p in parts)
        self.has_product = all(isinstance(p, IntervalModel) for p in parts)

    def norm(self, k: int, x):
        p = self.parts[k]
        if x == p.zero:
            return ZERO
        if x == p.one:
            return ONE
        return Branch(k, x)

    def check(self, e) -> None:
        if e is ZERO or e is ONE:
            return
        if not isinstance(e, Branch) or not isinstance(e.part, int):
            raise TypeError(f"horizontal-sum elements are ZERO, ONE or Branch, got {e!r}")
        if not 0 <= e.part < len(self.parts):
            raise TypeError(f"branch index {e.part} out of range")
        self.parts[e.part].check(e.inner)

    def contains(self, e) -> bool:
        self.check(e)
        if e is ZERO or e is ONE:
            return True
        p = self.parts[e.part]
        return p.contains(e.inner) and e.inner != p.zero and e.inner != p.one

    def sum(self, a, b):
        if a is ZERO:
            return b
        if b is ZERO:
            return a
        if a is ONE or b is ONE or a.part != b.part:
            return None
        s = self.parts[a.part].sum(a.inner, b.inner)
        return None if s is None else self.norm(a.part, s)

    def perp(self, a):
        if a is ZERO:
            return ONE
        if a is ONE:
            return ZERO
        return Branch(a.part, self.parts[a.part].perp(a.inner))

    def leq(self, a, b) -> bool:
        if a is ZERO or b is ONE:
            return True
        if a is ONE or b is ZERO:
            return a == b
        return a.part == b.part and self.parts[a.part].leq(a.inner, b.inner)

    def ominus(self, b, a):
        if not self.leq(a, b):
            return None
        if a is ZERO:
            return b
        if a == b:
            return ZERO
        if b is ONE:
            return self.perp(a)
        return self.norm(a.part, self.parts[a.part].ominus(b.inner, a.inner))

    def product(self, a, b):
        if not self.has_product:
            return super().product(a, b)
        if a is ZERO or b is ZERO:
            return ZERO
        if a is ONE:
            return b
        if b is ONE:
            return a
        return self.norm(a.part, a.inner * b.inner)

    def cardinality(self):
        if not self.finite:
            return None
        return 2 + sum(p.cardinality() - 2 for p in self.parts)

    def elements(self) -> list:
        if not self.finite:
            return super().elements()
        out = [ZERO, ONE]
        for k, p in enumerate(self.parts):
            out += [Branch(k, x) for x in p.elements() if x != p.zero and x != p.one]
        return out

    def boundary(self) -> list:
        out = []
        for k, p in enumerate(self.parts):
            out += [Branch(k, x) for x in p.boundary()]
        return out

    def draw(self, rng: random.Random):
        k = rng.randrange(len(self.parts))
        p = self.parts[k]
        for _ in range(100):
            x = p.draw(rng)
            if x != p.zero and x != p.one:
                return Branch(k, x)
        return ZERO

    def _branches(self, S) -> set:
        return {s.part for s in S if isinstance(s, Branch)}

    def center_rule(self):
        self._need_product()
        return ((lambda e: e is ZERO or e is ONE), "{0, 1}", [ZERO, ONE], [])

    def commutant_rule(self, S):
        self._need_product()
        used = self._branches(S)
        if not used:
            return ((lambda e: True), "whole horizontal sum", None,
                    [Branch(k, Fraction(1, 2)) for k in range(len(self.parts))])
        if len(used) == 1:
            (k,) = used
            return ((lambda e: not isinstance(e, Branch) or e.part == k),
                    f"branch {k} together with 0 and 1", None, [Branch(k, Fraction(1, 3))])
        return ((lambda e: e is ZERO or e is ONE), "{0, 1}", [ZERO, ONE], [])

    def _need_product(self):
        if not self.has_product:
            raise UnsupportedError(f"{self!r} carries no sequential product")

    def floor(self, a):
        self._need_product()
        if a is ZERO or a is ONE:
            return a
        return self.norm(a.part, self.parts[a.part].floor(a.inner))

    def halves(self, a) -> list:
        if a is ZERO:
            return [ZERO]
        if a is ONE:
            return [self.norm(k, h) for k, p in enumerate(self.parts) for h in p.halves(p.one)]
        return [self.norm(a.part, h) for h in self.parts[a.part].halves(a.inner)]

    def sqrt(self, a):
        self._need_product()
        if a is ZERO or a is ONE:
            return a, True
        r, exact = self.parts[a.part].sqrt(a.inner)
        return self.norm(a.part, r), exact

    def divide(self, a, n: int):
        if a is ONE:
            raise PreconditionError("1 has one n-th part per branch; division needs floor(a) = 0")
        if a is ZERO:
            return ZERO
        return self.norm(a.part, self.parts[a.part].divide(a.inner, n))

    def unit_map(self, lam, branch: int = 0):
        return self.norm(branch, self.parts[branch].unit_map(lam))

    def is_interval_sum(self) -> bool:
        return all(isinstance(p, IntervalModel) for p in self.parts)

    def __repr__(self) -> str:
        return f"HorizontalSum({', '.join(map(repr, self.parts))})"

    def __eq__(self, other) -> bool:
        return isinstance(other, HorizontalSumModel) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(("HorizontalSum", self.parts))


class CornerModel(Model):
    """The elements below an idempotent ``p``; complement is ``p ⊖ a``."""

    def __init__(self, base: Model, p):
        if not base.has_product:
            raise ValueError(f"corner needs a sequential product on {base!r}")
        if not base.contains(p):
            raise ValueError(f"{p!r} is not an element of {base!r}")
        if base.product(p, p) != p:
            raise ValueError(f"{p!r} is not an idempotent of {base!r}")
        self.base = base
        self.p = p
        self.zero = base.zero
        self.one = p
        self.finite = base.finite
        self.has_product = True

    def check(self, e) -> None:
        self.base.check(e)

    def contains(self, e) -> bool:
        return self.base.contains(e) and self.base.leq(e, self.p)

    def sum(self, a, b):
        s = self.base.sum(a, b)
        return s if s is not None and self.base.leq(s, self.p) else None

    def perp(self, a):
        return self.base.ominus(self.p, a)

    def leq(self, a, b) -> bool:
        return self.base.leq(a, b)

    def ominus(self, b, a):
        return self.base.ominus(b, a)

    def product(self, a, b):
        return self.base.product(a, b)

    def cardinality(self):
        return len(self.elements()) if self.finite else None

    def elements(self) -> list:
        if not self.finite:
            return super().elements()
        return [e for e in self.base.elements() if self.base.leq(e, self.p)]

    def mandated(self) -> list:
        out = [self.zero, self.one]
        try:
            out += [h for h in self.base.halves(self.p) if self.base.leq(h, self.p)]
        except UnsupportedError:
            pass
        return dedupe(out)

    def boundary(self) -> list:
        return dedupe(self.base.product(self.p, x) for x in self.base.boundary())

    def draw(self, rng: random.Random):
        return self.base.product(self.p, self.base.draw(rng))

    def _central_p(self):
        pred = self.base.center_rule()[0]
        if not pred(self.p):
            raise UnsupportedError("corner by a non-central idempotent has no closed-form center")
        return pred

    def center_rule(self):
        pred = self._central_p()
        members = self.base.center_rule()[2]
        if members is not None:
            members = [e for e in members if self.base.leq(e, self.p)]
        return ((lambda e: pred(e) and self.base.leq(e, self.p)),
                "center of the base below p", members, [])

    def floor(self, a):
        return self.base.floor(a)

    def halves(self, a) -> list:
        return [h for h in self.base.halves(a) if self.base.leq(h, self.p)]

    def sqrt(self, a):
        r, exact = self.base.sqrt(a)
        if not self.base.leq(r, self.p):
            raise UnsupportedError("square root leaves the corner")
        return r, exact

    def divide(self, a, n: int):
        return self.base.divide(a, n)

    def unit_map(self, lam, branch: int = 0):
        self._central_p()
        return self.base.product(self.p, self.base.unit_map(lam, branch))

    def __repr__(self) -> str:
        return f"Corner({self.base!r}, {self.p!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, CornerModel) and self.base == other.base and self.p == other.p

    def __hash__(self) -> int:
        return hash(("Corner", self.base, repr(self.p)))
