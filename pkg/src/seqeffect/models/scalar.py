"""The rational unit interval and the 2x2 matrix interval.

``MatrixIntervalModel`` is the set of 2x2 rational matrices between 0 and
the identity for the cone ``(x, y) > 0 iff x + y > 0`` on the plane.  A
matrix is a member iff it is 0, the identity, or both column sums agree and
lie strictly between 0 and 1.  Entries may be negative.  Because every
member has equal column sums, ``A ≤ B`` holds iff ``A = B`` or
``tau(A) < tau(B)``, where ``tau`` is the common column sum.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .base import (MAT_ID, MAT_ZERO, Mat, Model, UnsupportedError, as_fraction,
                   random_fraction)

SQRT_DENOMINATOR_BITS = 40


def rational_sqrt(q: Fraction, bits: int = SQRT_DENOMINATOR_BITS) -> tuple[Fraction, bool]:
    """Square root of ``q >= 0``: exact when ``q`` is a rational square,
    otherwise the largest ``k / 2**bits`` whose square is at most ``q``."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative input")
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd), True
    scale = 1 << bits
    k = math.isqrt(q.numerator * scale * scale // q.denominator)
    return Fraction(k, scale), False


class IntervalModel(Model):
    """``[0,1] ∩ Q`` with truncated addition and multiplication."""

    has_product = True
    zero = Fraction(0)
    one = Fraction(1)

    def check(self, e) -> None:
        as_fraction(e)

    def contains(self, e) -> bool:
        return 0 <= as_fraction(e) <= 1

    def sum(self, a, b):
        s = a + b
        return s if s <= 1 else None

    def perp(self, a):
        return 1 - a

    def leq(self, a, b) -> bool:
        return a <= b

    def ominus(self, b, a):
        return b - a if a <= b else None

    def product(self, a, b):
        return a * b

    def boundary(self) -> list:
        return [Fraction(1, 1000), Fraction(999, 1000)]

    def draw(self, rng: random.Random):
        return random_fraction(rng)

    def center_rule(self):
        return (lambda e: True), "whole interval (commutative)", None, []

    def commutant_rule(self, S):
        return (lambda e: True), "whole interval (commutative)", None, []

    def floor(self, a):
        return self.one if a == 1 else self.zero

    def halves(self, a) -> list:
        return [a / 2]

    def sqrt(self, a):
        return rational_sqrt(a)

    def divide(self, a, n: int):
        return a / n

    def unit_map(self, lam, branch: int = 0):
        return Fraction(lam)

    def __repr__(self) -> str:
        return "Interval"

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalModel)

    def __hash__(self) -> int:
        return hash("Interval")


def tau(a: Mat) -> Fraction:
    """The common column sum of a matrix-interval member."""
    s1, s2 = a.column_sums()
    if s1 != s2:
        raise ValueError(f"{a!r} is not a member: column sums {s1} and {s2} differ")
    return s1


def _in_span(b: Mat, a: Mat) -> bool:
    """Whether ``b = alpha*id + beta*a`` for some rationals (``a`` non-scalar)."""
    if a.b != 0:
        beta = b.b / a.b
    elif a.c != 0:
        beta = b.c / a.c
    else:
        beta = (b.a - b.d) / (a.a - a.d)
    alpha = b.a - beta * a.a
    return b == Mat.scalar(alpha) + a.scale(beta)


def _is_scalar(a: Mat) -> bool:
    return a.b == 0 and a.c == 0 and a.a == a.d


# two members whose joint commutant is the scalars
_E_TOP = Mat.of([[Fraction(1, 2), Fraction(1, 2)], [0, 0]])
_E_BOTTOM = Mat.of([[0, 0], [Fraction(1, 2), Fraction(1, 2)]])


class MatrixIntervalModel(Model):
    """2x2 rational matrices between 0 and id; product = matrix product."""

    has_product = True
    zero = MAT_ZERO
    one = MAT_ID

    def check(self, e) -> None:
        if not isinstance(e, Mat):
            raise TypeError(f"matrix-interval elements are Mat values, got {e!r}")
        for x in e:
            as_fraction(x)

    def contains(self, e) -> bool:
        self.check(e)
        if e == MAT_ZERO or e == MAT_ID:
            return True
        s1, s2 = e.column_sums()
        return s1 == s2 and 0 < s1 < 1

    def sum(self, a, b):
        s = a + b
        return s if self.contains(s) else None

    def perp(self, a):
        return MAT_ID - a

    def leq(self, a, b) -> bool:
        return a == b or tau(a) < tau(b)

    def ominus(self, b, a):
        return b - a if self.leq(a, b) else None

    def product(self, a, b):
        return a @ b

    def mandated(self) -> list:
        return [MAT_ZERO, MAT_ID, Mat.scalar(Fraction(1, 2))]

    def boundary(self) -> list:
        eps = Fraction(1, 1000)
        return [Mat.scalar(eps), Mat.scalar(1 - eps),
                Mat.of([[eps, 0], [0, eps]]) + Mat.of([[1, -1], [-1, 1]]),
                _E_TOP, _E_BOTTOM, Mat.scalar(Fraction(1, 3))]

    def draw(self, rng: random.Random):
        t = random_fraction(rng)
        if rng.random() < 0.15:
            return Mat.scalar(t)
        den = rng.choice((2, 3, 4, 6))
        a = Fraction(rng.randint(-den, 2 * den), den)
        b = Fraction(rng.randint(-den, 2 * den), den)
        return Mat(a, b, t - a, t - b)

    def center_rule(self):
        return _is_scalar, "scalar multiples of the identity", None, []

    def commutant_rule(self, S):
        nonscalar = [s for s in S if not _is_scalar(s)]
        if not nonscalar:
            return (lambda e: True), "whole matrix interval", None, [_E_TOP, _E_BOTTOM]
        a = nonscalar[0]
        if all(_in_span(s, a) for s in nonscalar[1:]):
            return ((lambda e: _in_span(e, a)),
                    f"members in span{{id, {a!r}}}", None, [a])
        return _is_scalar, "scalar multiples of the identity", None, []

    def floor(self, a):
        return MAT_ID if a == MAT_ID else MAT_ZERO

    def halves(self, a) -> list:
        return [a.scale(Fraction(1, 2))]

    def divide(self, a, n: int):
        return a.scale(Fraction(1, n))

    def sqrt(self, a):
        raise UnsupportedError("matrix interval: square roots are not unique "
                               "outside normal SEAs; no rule registered")

    def unit_map(self, lam, branch: int = 0):
        return Mat.scalar(lam)

    def __repr__(self) -> str:
        return "MatrixInterval"

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixIntervalModel)

    def __hash__(self) -> int:
        return hash("MatrixInterval")


@dataclass
class UpperBoundDemo:
    """A directed chain in the matrix interval with two minimal upper bounds."""

    chain: list
    limit: Fraction
    bounds: tuple
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def minimal_upper_bound_demo(terms: int = 40) -> UpperBoundDemo:
    """The chain ``(1/2 - 2**-(n+2))·id`` increases to ``tau = 1/2``.

    Every member with ``tau = 1/2`` bounds it, and is minimal because
    anything strictly below has smaller ``tau`` and is overtaken by a later
    chain element.  Two such bounds are distinct and incomparable, so the
    chain has no supremum.
    """
    m = MatrixIntervalModel()
    half = Fraction(1, 2)
    chain = [Mat.scalar(half - Fraction(1, 2 ** (n + 2))) for n in range(terms)]
    b1 = Mat.scalar(half)
    b2 = Mat.of([[Fraction(1, 4), half], [Fraction(1, 4), 0]])
    checks = {
        "chain members": all(m.contains(x) for x in chain),
        "chain increasing": all(m.leq(x, y) and x != y for x, y in zip(chain, chain[1:])),
        "bounds are members": m.contains(b1) and m.contains(b2),
        "both bound the chain": all(m.leq(x, b) for x in chain for b in (b1, b2)),
        "bounds distinct and incomparable": b1 != b2 and not m.leq(b1, b2) and not m.leq(b2, b1),
    }
    # minimality: members strictly below a bound miss some chain element
    below = [Mat.scalar(Fraction(k, 16)) for k in range(8)]
    below += [Mat.of([[Fraction(1, 8), half], [Fraction(k, 16), -half + Fraction(1, 8) + Fraction(k, 16)]])
              for k in range(1, 4)]
    minimal = True
    for c in below:
        assert m.contains(c)
        for b in (b1, b2):
            if m.leq(c, b) and c != b:
                if all(m.leq(x, c) for x in chain):
                    minimal = False
    checks["nothing strictly below a bound bounds the chain"] = minimal
    return UpperBoundDemo(chain, half, (b1, b2), checks)
