"""
A tour of the horizontal sum of two intervals
==============================================

Two copies of [0, 1] glued at 0 and 1.  Sums only exist inside one copy,
the product keeps the branch of its left factor, and 1 has two halves.
"""
from fractions import Fraction as F

from seqeffect import HorizontalSum, Interval
from seqeffect.models import ONE, Branch
from seqeffect.sequential import center, check_sea_axioms, halves_of
from seqeffect.structure import check_aconvex_action, classify_convexity, standard_action

H = HorizontalSum([Interval(), Interval()])
left, right = Branch(0, F(1, 2)), Branch(1, F(1, 2))

# sums across branches are undefined
print("½L ⊻ ½R =", H.sum(left, right))
print("½L ⊻ ½L =", H.sum(left, left))

# the product keeps the left factor's branch, so it does not commute
print("½L ∘ ½R =", H.product(left, right))
print("½R ∘ ½L =", H.product(right, left))

# still a sequential effect algebra (sampled check, exact arithmetic)
rep = check_sea_axioms(H)
print("SEA axioms:", "pass" if rep.ok else "fail", f"({rep.properties['triples']} triples)")

# two halves of 1 and a trivial center
print("halves of 1:", halves_of(H, ONE))
print("center:", center(H).members)

# scaling through the left branch is a-convex but not convex
rep = check_aconvex_action(standard_action(H, 0))
w = rep.properties["convexity_witness"]
print(f"λ = {w['lambda']}: λ·(a ⊻ b) = {w['lhs']}, λ·a ⊻ λ·b = {w['rhs']}")

print("classification:", classify_convexity(H).kind.value)
