from __future__ import annotations

import random
from fractions import Fraction
from numbers import Rational
from typing import Any, NamedTuple

Elem = Any

SMALL_DENOMINATORS = (2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16)


class UnsupportedError(ValueError):
    """The operation has no registered rule for this model family."""


class PreconditionError(ValueError):
    """An operation was called outside its hypotheses."""


class NoProductError(UnsupportedError):
    def __init__(self, model):
        super().__init__(f"no sequential product attached to {model!r}")


class _Extreme:
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name

    def __reduce__(self):
        return self.name


ZERO = _Extreme("ZERO")
ONE = _Extreme("ONE")


class Branch(NamedTuple):
    """A non-extreme element ``inner`` of summand ``part`` of a horizontal sum."""
    part: int
    inner: Elem

    def __repr__(self) -> str:
        return f"Branch({self.part}, {self.inner!s})"


class Mat(NamedTuple):
    """The 2x2 rational matrix ``[[a, b], [c, d]]``."""
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @classmethod
    def of(cls, rows) -> "Mat":
        (a, b), (c, d) = rows
        return cls(Fraction(a), Fraction(b), Fraction(c), Fraction(d))

    @classmethod
    def scalar(cls, q) -> "Mat":
        q = Fraction(q)
        return cls(q, Fraction(0), Fraction(0), q)

    def rows(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return (self.a, self.b), (self.c, self.d)

    def __add__(self, o: "Mat") -> "Mat":  # type: ignore[override]
        return Mat(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o: "Mat") -> "Mat":
        return Mat(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __matmul__(self, o: "Mat") -> "Mat":
        return Mat(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                   self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def scale(self, q) -> "Mat":
        return Mat(self.a * q, self.b * q, self.c * q, self.d * q)

    def column_sums(self) -> tuple[Fraction, Fraction]:
        return self.a + self.c, self.b + self.d

    def __repr__(self) -> str:
        return f"Mat[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


MAT_ZERO = Mat.scalar(0)
MAT_ID = Mat.scalar(1)


def as_fraction(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, Rational):
        raise TypeError(f"expected a rational number, got {type(x).__name__}: {x!r}")
    return Fraction(x)


def random_fraction(rng: random.Random, open_interval: bool = True) -> Fraction:
    """A rational in (0,1) with a small denominator (so sums often exist)."""
    den = rng.choice(SMALL_DENOMINATORS)
    lo, hi = (1, den - 1) if open_interval else (0, den)
    return Fraction(rng.randint(lo, hi), den)


def dedupe(items) -> list:
    seen, out = set(), []
    for x in items:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


class Model:
    """Base class of every model family.

    Subclasses provide the effect-algebra structure (``sum`` returns
    ``None`` when the pair is not summable), optionally a sequential
    ``product``, and whatever closed forms the family supports.
    Closed forms not supported by a family raise :class:`UnsupportedError`.
    """

    finite = False
    has_product = False
    zero: Elem
    one: Elem

    # -- structure ---------------------------------------------------------
    def check(self, e: Elem) -> None:
        """Raise ``TypeError`` if ``e`` does not have this family's shape."""
        raise NotImplementedError

    def contains(self, e: Elem) -> bool:
        raise NotImplementedError

    def sum(self, a: Elem, b: Elem) -> Elem | None:
        raise NotImplementedError

    def perp(self, a: Elem) -> Elem:
        raise NotImplementedError

    def leq(self, a: Elem, b: Elem) -> bool:
        raise NotImplementedError

    def ominus(self, b: Elem, a: Elem) -> Elem | None:
        """``b ⊖ a`` when ``a ≤ b``, else ``None``."""
        if not self.leq(a, b):
            return None
        return self.perp(self.sum(a, self.perp(b)))

    def product(self, a: Elem, b: Elem) -> Elem:
        raise NoProductError(self)

    # -- carriers ----------------------------------------------------------
    def cardinality(self) -> int | None:
        """Number of elements for finite carriers, ``None`` otherwise."""
        return None

    def elements(self) -> list:
        raise UnsupportedError(f"{self!r} has an infinite carrier")

    def mandated(self) -> list:
        """Elements every sample must contain: 0, 1 and the halves of 1."""
        base = [self.zero, self.one]
        try:
            base += self.halves(self.one)
        except UnsupportedError:
            pass
        return dedupe(base)

    def draw(self, rng: random.Random) -> Elem:
        """One pseudo-random carrier element."""
        if self.finite:
            return rng.choice(self.elements())
        raise NotImplementedError

    def boundary(self) -> list:
        """Elements adjacent to 0 and 1."""
        return []

    def sample(self, budget: int, rng: random.Random) -> list:
        """Mandated and boundary elements, topped up with random ones."""
        if self.finite:
            els = self.elements()
            if len(els) <= budget:
                return els
            rest = [e for e in els if e not in set(self.mandated())]
            head = self.mandated()
            return head + rng.sample(rest, max(0, budget - len(head)))
        out = dedupe(self.mandated() + self.boundary())[:budget]
        seen = set(out)
        tries = 0
        while len(out) < budget and tries < 50 * budget:
            tries += 1
            e = self.draw(rng)
            if e not in seen:
                seen.add(e)
                out.append(e)
        return out

    # -- per-family closed forms -------------------------------------------
    def center_rule(self):
        """``(predicate, description, members or None, spanning set)``."""
        raise UnsupportedError(f"no closed-form center for {self!r}")

    def commutant_rule(self, S: list):
        raise UnsupportedError(f"unsupported: symbolic commutant for {self!r}")

    def floor(self, a: Elem) -> Elem:
        raise UnsupportedError(f"no closed-form floor for {self!r}")

    def halves(self, a: Elem) -> list:
        raise UnsupportedError(f"no closed-form halves for {self!r}")

    def sqrt(self, a: Elem) -> tuple[Elem, bool]:
        raise UnsupportedError(f"no square-root rule for {self!r}")

    def divide(self, a: Elem, n: int) -> Elem:
        raise UnsupportedError(f"no exact division for {self!r}")

    def unit_map(self, lam: Fraction, branch: int = 0) -> Elem:
        """A standard additive unital map ``[0,1] → E`` (``λ ↦ λ·1``)."""
        raise UnsupportedError(f"no additive map from [0,1] into {self!r}")
