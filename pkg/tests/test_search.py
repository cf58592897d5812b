import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqeffect.core import (FiniteEATable, StructuralError, boolean_table, chain, diamond,
                            trivial_table)
from seqeffect.models import Boolean, DirectSum, Finite, Interval
from seqeffect.search import (AxiomSet, SearchProblem, SearchRefused, automorphisms,
                              canonical_form, naive_search, relabel_product, search_effect_monoids,
                              search_products, table_of, verify_finite_boolean_corollary)
from seqeffect.sequential import check_effect_monoid, check_sea_axioms

from oracles import meet_table

SMALL = {"trivial": trivial_table(), **{f"MV{n}": chain(n) for n in range(1, 6)},
         "B1": boolean_table(1), "B2": boolean_table(2), "MO2": diamond()}

# frozen counts, confirmed against the naive enumeration below
SEA_COUNTS = {"trivial": 1, "MV1": 1, "MV2": 0, "MV3": 0, "MV4": 0, "MV5": 0,
              "B1": 1, "B2": 1, "B3": 1, "MO2": 0}


def solve(t, axioms=AxiomSet.SEA, **kw):
    p = SearchProblem(t, axioms, **kw)
    return search_products(p) if axioms is AxiomSet.SEA else search_effect_monoids(p)


@pytest.fixture(scope="module")
def naive():
    """Naive solution sets, computed once (MO2 takes several seconds)."""
    return {(name, ax): naive_search(t, ax) for name, t in SMALL.items()
            for ax in (AxiomSet.SEA, AxiomSet.EFFECT_MONOID)}


class TestExamples:
    @pytest.mark.parametrize("name,count", sorted(SEA_COUNTS.items()))
    def test_sea_counts(self, name, count):
        t = boolean_table(3) if name == "B3" else SMALL[name]
        res = solve(t)
        assert res.count == count
        assert res.boolean_verdict == (count == 1)

    def test_boolean_solution_is_meet(self):
        for k in (1, 2, 3):
            t = boolean_table(k)
            (sol,) = solve(t).solutions
            S = [[t.sum(i, j) for j in range(t.size)] for i in range(t.size)]
            assert [list(r) for r in sol] == meet_table(t.size, S)

    def test_monoid_on_mv2(self):
        assert solve(chain(2), AxiomSet.EFFECT_MONOID).count == 0

    def test_monoid_on_boolean(self):
        res = solve(boolean_table(2), AxiomSet.EFFECT_MONOID_WITH_S3)
        assert res.count == 1 and res.zero_symmetric == [True]

    def test_monoid_counts_match_sea_on_small_tables(self):
        for name in ("MV1", "MV3", "B2"):
            t = SMALL[name]
            assert solve(t, AxiomSet.EFFECT_MONOID).count == SEA_COUNTS[name]

    def test_entry_points_reject_wrong_axioms(self):
        with pytest.raises(ValueError):
            search_products(SearchProblem(chain(1), AxiomSet.EFFECT_MONOID))
        with pytest.raises(ValueError):
            search_effect_monoids(SearchProblem(chain(1)))


class TestLimits:
    def test_size_bound(self):
        with pytest.raises(SearchRefused):
            solve(boolean_table(4))
        assert solve(boolean_table(4), size_bound=16).count == 1

    def test_not_finite(self):
        with pytest.raises(SearchRefused, match="requires finite"):
            table_of(Interval())

    def test_not_an_effect_algebra(self):
        bad = FiniteEATable(3, 2, [(0, 0, 0), (0, 1, 1), (0, 2, 2), (1, 1, 2)], [2, 2, 0])
        with pytest.raises(StructuralError):
            solve(bad)

    def test_max_solutions(self):
        res = solve(boolean_table(2), max_solutions=1)
        assert res.count == 1 and not res.complete
        with pytest.raises(ValueError):
            SearchProblem(chain(1), max_solutions=0)

    def test_naive_cap(self):
        with pytest.raises(SearchRefused):
            naive_search(boolean_table(3))


@pytest.mark.parametrize("name", sorted(SMALL))
@pytest.mark.parametrize("axioms", [AxiomSet.SEA, AxiomSet.EFFECT_MONOID], ids=lambda a: a.value)
def test_agrees_with_naive(naive, name, axioms):
    assert solve(SMALL[name], axioms).solutions == naive[(name, axioms)]


@pytest.mark.parametrize("name", sorted(SMALL))
def test_solutions_are_sound(name):
    t = SMALL[name]
    for sol in solve(t).solutions:
        assert check_sea_axioms(Finite(t, sol)).ok
    for sol in solve(t, AxiomSet.EFFECT_MONOID).solutions:
        assert check_effect_monoid(Finite(t, sol)).ok


def test_models_via_table_of():
    t, labels = table_of(DirectSum([Boolean(1), Boolean(1)]))
    assert t.size == 4 and labels[0] == (frozenset(), frozenset())
    assert solve(t).count == 1


BASES = [chain(3), boolean_table(2), boolean_table(3), diamond()]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(BASES), st.data())
def test_canonical_counts_invariant_under_relabeling(t, data):
    rest = data.draw(st.permutations(range(1, t.size)))
    u = t.relabel([0, *rest])
    a = solve(t, canonicalize=True)
    b = solve(u, canonicalize=True)
    assert a.count == b.count and a.raw_count == b.raw_count


def test_automorphisms():
    assert len(automorphisms(boolean_table(3))) == 6
    assert len(automorphisms(chain(4))) == 1
    # a and b may swap, and each may swap with its complement
    assert len(automorphisms(diamond())) == 8


def test_canonical_form_collapses_orbits():
    t = boolean_table(2)
    autos = automorphisms(t)
    (meet,) = solve(t).solutions
    for g in autos:
        assert canonical_form(relabel_product(meet, g), autos) == canonical_form(meet, autos)


def test_corollary_report():
    tables = [(f"MV{n}", chain(n)) for n in range(1, 6)]
    tables += [(f"B{k}", boolean_table(k)) for k in (1, 2, 3)]
    tables += [("MO2", diamond()), ("trivial", trivial_table())]
    rep = verify_finite_boolean_corollary(tables)
    assert rep.ok and not rep.candidates
    assert {r.name for r in rep.rows if r.solutions} == {"MV1", "B1", "B2", "B3", "trivial"}


def test_every_solution_fixes_one_and_zero():
    for name, t in SMALL.items():
        for sol in solve(t).solutions:
            for a, b in itertools.product(range(t.size), repeat=2):
                if a == t.one:
                    assert sol[a][b] == b
                if 0 in (a, b):
                    assert sol[a][b] == 0
