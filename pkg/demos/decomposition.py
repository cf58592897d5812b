"""
Splitting a model into Boolean, convex and purely a-convex blocks
==================================================================

A direct sum of a Boolean algebra, an interval and a horizontal sum falls
apart along three central idempotents.
"""
from fractions import Fraction as F

from seqeffect import Boolean, DirectSum, HorizontalSum, Interval
from seqeffect.models import Branch
from seqeffect.structure import (bicommutant_representation, check_commuting_halves,
                                 classify_convexity, decompose)

H = HorizontalSum([Interval(), Interval()])
D = DirectSum([Boolean(3), Interval(), H])

rep = decompose(D)
for name in ("boolean", "convex", "aconvex"):
    print(f"{name:8} block {rep.block(name)!r:36} witness {rep.witnesses[name]}")

# each witness is central and idempotent; they are orthogonal and sum to 1
for check, ok in rep.evidence.items():
    print(f"  {'ok ' if ok else 'BAD'} {check}")

# the three parts one at a time
for m in (Boolean(3), Interval(), H):
    c = classify_convexity(m)
    ch = check_commuting_halves(m)
    print(f"{m!r:32} {c.kind.value:15} commuting halves: {ch.holds}")

# inside H, an element generates a copy of one branch
r = bicommutant_representation(H, Branch(1, F(1, 3)))
print("bicommutant of (1/3, R) is a copy of", r.interval_part, "with no Boolean part:",
      r.boolean_part is None)
