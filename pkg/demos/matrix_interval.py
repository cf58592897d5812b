"""
The 2x2 matrix interval
=======================

Rational 2x2 matrices with equal column sums strictly between 0 and 1,
together with 0 and the identity.  The product is matrix multiplication
and the column sum tau is multiplicative.
"""
import random
from fractions import Fraction as F

from seqeffect import MatrixInterval
from seqeffect.models import Mat, minimal_upper_bound_demo, tau
from seqeffect.structure import analyze_associativity

m = MatrixInterval()
a = Mat.of([[F(1, 2), F(1, 2)], [0, 0]])
b = Mat.of([[0, 0], [F(1, 2), F(1, 2)]])

print("a ∘ b =", m.product(a, b))
print("b ∘ a =", m.product(b, a))
print("tau(a ∘ b) =", tau(m.product(a, b)), "= tau(a) tau(b) =", tau(a) * tau(b))

# complements may have negative entries and still be members
print("a⊥ =", m.perp(a), "member:", m.contains(m.perp(a)))

# a deterministic sample: the extremes and scalars come first, then generic members
rng = random.Random(1)
for x in m.sample(10, rng):
    print(x, "tau", tau(x))

r = analyze_associativity(m)
print("associative:", r.associative, "commutative:", r.commutative)
print("idempotents found:", r.idempotents)

# an increasing chain with two incomparable minimal upper bounds
demo = minimal_upper_bound_demo()
print("chain converges to tau =", demo.limit)
for bound in demo.bounds:
    print("  upper bound", bound)
print("checks:", demo.checks)
