from fractions import Fraction as F

import pytest

from seqeffect.core import boolean_table, chain
from seqeffect.models import (ONE, ZERO, Boolean, Branch, Corner, DirectSum, Finite,
                              HorizontalSum, Interval, MatrixInterval, UnsupportedError, bits,
                              meet_product, trivial)
from seqeffect.sequential import commutes, halves_of
from seqeffect.structure import (AConvexAction, Convexity, action_from_additive_map,
                                 analyze_associativity, bicommutant_representation,
                                 check_aconvex_action, check_commuting_halves,
                                 classify_convexity, decompose, standard_action)

L, R = 0, 1
HALF = F(1, 2)


class TestActions:
    def test_left_action_on_h(self, H):
        rep = check_aconvex_action(standard_action(H, L))
        assert rep.ok and not rep.properties["convex"]
        w = rep.properties["convexity_witness"]
        assert (w["a"], w["b"]) == (Branch(R, HALF), Branch(R, HALF))
        lam = w["lambda"]
        assert w["lhs"] == Branch(L, lam) and w["rhs"] == Branch(R, lam)

    def test_right_action_from_map(self, H):
        act = action_from_additive_map(H, lambda lam: H.norm(R, lam))
        assert act(HALF, ONE) == Branch(R, HALF)
        assert check_aconvex_action(act).ok

    def test_two_distinct_actions(self, H):
        left, right = standard_action(H, L), standard_action(H, R)
        assert left(HALF, ONE) != right(HALF, ONE)

    def test_interval_is_convex(self):
        rep = check_aconvex_action(action_from_additive_map(Interval(), lambda lam: lam))
        assert rep.ok and rep.properties["convex"]

    def test_direct_sum_of_intervals(self):
        D = DirectSum([Interval(), Interval()])
        rep = check_aconvex_action(standard_action(D))
        assert rep.ok and rep.properties["convex"]

    def test_non_additive_map(self):
        with pytest.raises(ValueError, match="not additive"):
            action_from_additive_map(Interval(), lambda lam: lam * lam)

    def test_scalar_out_of_range(self):
        act = standard_action(Interval())
        with pytest.raises(ValueError):
            act(F(3, 2), HALF)
        with pytest.raises(ValueError):
            check_aconvex_action(act, scalars=[F(-1, 2)])

    def test_broken_action_reported(self):
        act = AConvexAction(Interval(), lambda lam, a: a)
        rep = check_aconvex_action(act)
        assert "λ·a ⊻ μ·a = (λ+μ)·a" in rep.axioms()


class TestClassification:
    def test_boolean(self):
        c = classify_convexity(Boolean(3))
        assert c.kind is Convexity.BOOLEAN and c.halves == []

    def test_interval(self):
        c = classify_convexity(Interval())
        assert c.kind is Convexity.CONVEX and c.halves == [HALF]

    def test_horizontal(self, H):
        c = classify_convexity(H)
        assert c.kind is Convexity.PURELY_ACONVEX
        assert c.center.members == [ZERO, ONE]
        assert c.halves == [Branch(L, HALF), Branch(R, HALF)]

    def test_matrix_interval(self):
        # unique half (1/2)·id, which is central
        assert classify_convexity(MatrixInterval()).kind is Convexity.CONVEX

    def test_direct_sum_intervals(self):
        c = classify_convexity(DirectSum([Interval(), Interval()]))
        assert c.kind is Convexity.CONVEX and c.halves == [(HALF, HALF)]

    def test_mixed(self, H):
        c = classify_convexity(DirectSum([Interval(), H]))
        assert c.kind is Convexity.ACONVEX_MIXED


class TestDecomposition:
    def test_three_blocks(self, H):
        D = DirectSum([Boolean(3), Interval(), H])
        rep = decompose(D)
        assert rep.ok, rep.evidence
        assert (rep.boolean_block, rep.convex_block, rep.aconvex_block) == (Boolean(3), Interval(), H)
        assert rep.witnesses == {"boolean": (Boolean(3).one, F(0), ZERO),
                                 "convex": (frozenset(), F(1), ZERO),
                                 "aconvex": (frozenset(), F(0), ONE)}

    def test_finite_boolean_table(self):
        t = boolean_table(2)
        m = Finite(t, meet_product(t))
        rep = decompose(m)
        assert rep.ok and rep.boolean_block == m
        assert rep.convex_block == trivial() == rep.aconvex_block
        assert rep.evidence["Boolean algebra"]

    def test_direct_sum_of_intervals(self):
        D = DirectSum([Interval(), Interval()])
        rep = decompose(D)
        assert rep.ok and rep.convex_block == D
        assert rep.boolean_block == trivial() == rep.aconvex_block

    def test_flattening_nested(self, H):
        D = DirectSum([DirectSum([Boolean(1), H]), Interval(), Boolean(2)])
        rep = decompose(D)
        assert rep.ok
        assert rep.boolean_block == DirectSum([Boolean(1), Boolean(2)])

    def test_corner_of_direct_sum(self, H):
        D = DirectSum([Boolean(2), Interval(), H])
        rep = decompose(Corner(D, (bits(1), F(1), ONE)))
        assert rep.ok
        assert rep.convex_block == Interval() and rep.aconvex_block == H

    def test_unclassifiable_leaf(self):
        # Lukasiewicz product on the 4-chain: no halves of 1 and 1∘1 = 0
        luk = [[max(0, a + b - 3) for b in range(4)] for a in range(4)]
        with pytest.raises(UnsupportedError, match="cannot decompose"):
            decompose(DirectSum([Boolean(1), Finite(chain(3), luk)]))


class TestCommutingHalves:
    @pytest.mark.parametrize("m", [Interval(), Boolean(2), DirectSum([Interval(), Interval()])],
                             ids=repr)
    def test_true(self, m):
        r = check_commuting_halves(m)
        assert r.holds and r.agrees in (True, None)

    def test_horizontal(self, H):
        r = check_commuting_halves(H)
        assert not r.holds and r.agrees
        a, b, c = r.witness
        assert H.sum(c, c) == b and commutes(H, a, b) and not commutes(H, a, c)

    def test_stated_witness(self, H):
        a, c = Branch(L, F(1, 3)), Branch(R, HALF)
        assert H.sum(c, c) is ONE
        assert commutes(H, a, ONE)
        assert H.product(a, c) == Branch(L, F(1, 6)) and H.product(c, a) == Branch(R, F(1, 6))


class TestAssociativity:
    def test_matrix(self):
        r = analyze_associativity(MatrixInterval())
        assert r.associative and not r.commutative and r.idempotents_central
        assert {repr(p) for p in r.idempotents} == {"Mat[[0, 0], [0, 0]]", "Mat[[1, 0], [0, 1]]"}

    def test_horizontal(self, H):
        r = analyze_associativity(H)
        assert r.associative and not r.commutative and r.idempotents_central
        assert r.factor_classification == "horizontal sum of 2 intervals"

    def test_three_branches(self):
        r = analyze_associativity(HorizontalSum([Interval()] * 3))
        assert r.factor_branches == 3

    def test_boolean(self):
        r = analyze_associativity(Boolean(3))
        assert r.associative and r.commutative and r.factor_classification is None


class TestBicommutantRepresentation:
    def test_boolean(self):
        r = bicommutant_representation(Boolean(3), bits(0))
        assert r.interval_part is None
        assert set(r.boolean_members) == {bits(), bits(0), bits(1, 2), bits(0, 1, 2)}

    def test_interval(self):
        r = bicommutant_representation(Interval(), F(1, 3))
        assert r.interval_part == Interval() and r.boolean_part is None

    def test_direct_sum(self):
        r = bicommutant_representation(DirectSum([Boolean(1), Interval()]), (bits(0), HALF))
        assert r.interval_part == Interval() and r.boolean_part == Boolean(1)
        assert len(r.boolean_members) == 2

    def test_horizontal_branch(self, H):
        r = bicommutant_representation(H, Branch(R, F(1, 4)))
        assert r.interval_part == Interval() and r.interval_idempotent is ONE

    def test_matrix_unsupported(self):
        with pytest.raises(UnsupportedError):
            bicommutant_representation(MatrixInterval(), MatrixInterval().one)


def test_equivalences_on_aconvex_models(H):
    """Convex ⇔ unique half ⇔ commuting halves, on every a-convex model."""
    models = [Interval(), MatrixInterval(), H, HorizontalSum([Interval()] * 3),
              DirectSum([Interval(), Interval()]), DirectSum([Interval(), H])]
    for m in models:
        kind = classify_convexity(m).kind
        unique = len(halves_of(m, m.one)) == 1
        holds = check_commuting_halves(m).holds
        assert (kind is Convexity.CONVEX) == unique == holds, m
