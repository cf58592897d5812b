"""Acceptance criteria, one test each.

Every test prints a single ``PASS criterion N: ...`` or ``FAIL criterion N:
...`` line (collected into the pytest terminal summary as well), then
asserts.  Run ``pytest tests/test_acceptance.py -s`` to see the lines
inline, or ``python tests/test_acceptance.py`` for a standalone report.
"""
import io
import itertools
import random
import sys
import time
from fractions import Fraction as F

from seqeffect.cli import run
from seqeffect.core import boolean_table, chain, diamond
from seqeffect.models import (MAT_ID, MAT_ZERO, ONE, ZERO, Boolean, Branch, DirectSum, Finite,
                              HorizontalSum, Interval, Mat, MatrixInterval, PreconditionError,
                              meet_product, minimal_upper_bound_demo, tau)
from seqeffect.search import AxiomSet, SearchProblem, naive_search, search_products
from seqeffect.sequential import (check_sea_axioms, divide_by_n, floor, is_idempotent, nfold,
                                  sqrt)
from seqeffect.structure import (Convexity, analyze_associativity, check_aconvex_action,
                                 check_commuting_halves, classify_convexity, decompose,
                                 standard_action)

from conftest import corpus_files

L, R = 0, 1
HALF = F(1, 2)
LINES: list[str] = []


def verdict(n: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    LINES.append(line)
    print(line)
    assert ok, line


def hsum():
    return HorizontalSum([Interval(), Interval()])


def boolean_finite(k):
    t = boolean_table(k)
    return Finite(t, meet_product(t))


def test_criterion_1_axiom_suites():
    t0 = time.perf_counter()
    problems = []
    families = [Boolean(1), Boolean(2), Boolean(3), Interval(), MatrixInterval(), hsum()]
    for m in families:
        rep = check_sea_axioms(m)
        parametric = not rep.properties["exhaustive"]
        if not rep.ok or (parametric and rep.properties["triples"] < 10_000):
            problems.append(repr(m))
    corpus = corpus_files("valid")
    for path in corpus:
        if run(["check", str(path)], io.StringIO()) != 0:
            problems.append(path.stem)
    secs = time.perf_counter() - t0
    ok = not problems and secs < 60
    verdict(1, ok, f"{len(families)} families and {len(corpus)} corpus models pass "
                   f"S1-S5 in {secs:.1f}s" + (f"; failing: {problems}" if problems else ""))


CORPUS_TABLES = [("MV2", chain(2)), ("MV3", chain(3)), ("MV4", chain(4)),
                 ("B1", boolean_table(1)), ("B2", boolean_table(2)), ("B3", boolean_table(3)),
                 ("MO2", diamond())]


def test_criterion_2_finite_boolean_corollary():
    t0 = time.perf_counter()
    bad = []
    naive_checked = 0
    for name, t in CORPUS_TABLES:
        res = search_products(SearchProblem(t))
        boolean = name.startswith("B")
        expected = 1 if boolean else 0
        if res.count != expected or (boolean and not res.is_meet(res.solutions[0])):
            bad.append(f"{name}: {res.count} solutions")
        if t.size <= 6:
            naive_checked += 1
            if naive_search(t, AxiomSet.SEA) != res.solutions:
                bad.append(f"{name}: disagrees with naive enumeration")
    secs = time.perf_counter() - t0
    ok = not bad and secs < 300
    verdict(2, ok, f"0 products on MV2-4 and MO2, exactly the meet on B1-B3; naive oracle "
                   f"agrees on {naive_checked} tables; {secs:.1f}s" + (f"; {bad}" if bad else ""))


def test_criterion_3_horizontal_sum_witness():
    H = hsum()
    ok = True
    for k in (L, R):
        rep = check_aconvex_action(standard_action(H, k))
        w = rep.properties["convexity_witness"]
        other = 1 - k
        # λ·(½ ⊻ ½) = λ·1 lands on branch k, λ·½ ⊻ λ·½ stays on the other branch
        ok &= rep.ok and not rep.properties["convex"]
        ok &= w["a"] == w["b"] == Branch(other, HALF)
        ok &= w["lhs"] == Branch(k, w["lambda"]) and w["rhs"] == Branch(other, w["lambda"])
    c = classify_convexity(H)
    ok &= c.kind is Convexity.PURELY_ACONVEX
    ok &= c.center.members == [ZERO, ONE]
    ok &= set(c.halves) == {Branch(L, HALF), Branch(R, HALF)}
    verdict(3, ok, "both actions a-convex, not convex (witness a=b=½ on the opposite branch); "
                   "H is PurelyAConvex, center {0,1}, two halves of 1")


def _random_matrix(rng: random.Random) -> Mat:
    r = rng.random()
    if r < 0.02:
        return MAT_ZERO
    if r < 0.04:
        return MAT_ID
    s = F(rng.randint(1, 31), 32)
    a = F(rng.randint(-24, 24), 12)
    b = F(rng.randint(-24, 24), 12)
    return Mat(a, b, s - a, s - b)


def test_criterion_4_matrix_interval():
    m = MatrixInterval()
    rng = random.Random(2024)
    pairs = 10_000
    stats = dict.fromkeys(["tau", "monotone", "zero_divisor", "assoc", "closure"], 0)
    noncommuting = None
    idempotents = set()
    prev = MAT_ID
    for _ in range(pairs):
        a, b = _random_matrix(rng), _random_matrix(rng)
        ab = m.product(a, b)
        stats["closure"] += not m.contains(ab)
        stats["tau"] += tau(ab) != tau(a) * tau(b)
        if ab == MAT_ZERO and MAT_ZERO not in (a, b):
            stats["zero_divisor"] += 1
        s = m.sum(a, b)
        if s is not None and not (tau(a) <= tau(s) and m.leq(a, s)):
            stats["monotone"] += 1
        if m.leq(a, b) and tau(a) > tau(b):
            stats["monotone"] += 1
        stats["assoc"] += m.product(m.product(a, b), prev) != m.product(a, m.product(b, prev))
        if noncommuting is None and ab != m.product(b, a):
            noncommuting = (a, b)
        for x in (a, b):
            if m.product(x, x) == x:
                idempotents.add(x)
        prev = a
    demo = minimal_upper_bound_demo()
    ok = (not any(stats.values()) and noncommuting is not None
          and idempotents == {MAT_ZERO, MAT_ID} and demo.ok)
    verdict(4, ok, f"{pairs} exact pairs: tau multiplicative and monotone, no zero divisors, "
                   f"associative, non-commuting pair found, idempotents {{0, id}}; "
                   f"two minimal upper bounds of tau {demo.limit}" +
                   (f"; counts {stats}" if any(stats.values()) else ""))


def _floor_ok(m, els) -> bool:
    idem = [p for p in els if is_idempotent(m, p)]
    for a in els:
        f = floor(m, a)
        if not (is_idempotent(m, f) and m.leq(f, a)):
            return False
        if any(m.leq(p, a) and not m.leq(p, f) for p in idem):
            return False
    return True


def test_criterion_5_floor_division_sqrt():
    H = hsum()
    finite = [Boolean(1), Boolean(2), Boolean(3), boolean_finite(2), boolean_finite(3)]
    parametric = [Interval(), MatrixInterval(), H, DirectSum([Interval(), H])]
    ok = all(_floor_ok(m, list(m.elements())) for m in finite)
    ok &= all(_floor_ok(m, m.sample(40, random.Random(5))) for m in parametric)
    divisions = 0
    for m in finite + parametric:
        els = list(m.elements()) if m.finite else m.sample(40, random.Random(6))
        for a in els:
            if floor(m, a) != m.zero:
                continue
            for n in (1, 2, 3, 5):
                ok &= nfold(m, divide_by_n(m, a, n), n) == a
                divisions += 1
    try:
        divide_by_n(H, ONE, 2)
        ok = False
    except PreconditionError:
        pass
    roots = 0
    B = Boolean(3)
    for a in B.elements():
        r = sqrt(B, a)
        ok &= r.exact and B.product(r.value, r.value) == a
        roots += 1
    for p, q in itertools.product(range(0, 13), range(1, 13)):
        if p <= q:
            a = F(p, q) ** 2
            r = sqrt(Interval(), a)
            ok &= r.exact and r.value * r.value == a
            roots += 1
    verdict(5, ok, f"floor is the largest idempotent below a; {divisions} divisions sum back; "
                   f"divide(1, 2) in H refused; {roots} exact square roots")


def test_criterion_6_decomposition():
    H = hsum()
    D = DirectSum([Boolean(3), Interval(), H])
    rep = decompose(D)
    blocks_match = (rep.boolean_block, rep.convex_block, rep.aconvex_block) == (Boolean(3),
                                                                               Interval(), H)
    ok = blocks_match and rep.ok
    verdict(6, ok, f"blocks Boolean(3) | Interval | H; {len(rep.evidence)} evidence checks "
                   f"({'all pass' if rep.ok else 'some fail'})")


def test_criterion_7_associativity():
    H = hsum()
    ok = True
    for m in (MatrixInterval(), H):
        r = analyze_associativity(m)
        ok &= r.associative and not r.commutative and bool(r.idempotents_central)
    for m in (Boolean(2), Boolean(3), boolean_finite(2)):
        r = analyze_associativity(m)
        ok &= r.associative and r.commutative
    ok &= analyze_associativity(H).factor_classification == "horizontal sum of 2 intervals"
    verdict(7, ok, "MatrixInterval and H associative, non-commutative, idempotents central; "
                   "Boolean commutative; H is a horizontal sum of 2 intervals")


def test_criterion_8_commuting_halves():
    H = hsum()
    positive = [Interval(), Boolean(2), Boolean(3), DirectSum([Interval(), Interval()]),
                DirectSum([Interval(), MatrixInterval()])]
    ok = all(check_commuting_halves(m).holds for m in positive)
    r = check_commuting_halves(H)
    ok &= not r.holds and r.witness is not None
    if r.witness is not None:
        a, b, c = r.witness
        ok &= H.sum(c, c) == b and H.product(a, b) == H.product(b, a)
        ok &= H.product(a, c) != H.product(c, a)
    aconvex = [Interval(), MatrixInterval(), H, HorizontalSum([Interval()] * 3),
               DirectSum([Interval(), Interval()]), DirectSum([Interval(), H])]
    agreed = 0
    for m in aconvex:
        kind = classify_convexity(m).kind
        holds = check_commuting_halves(m).holds
        if kind in (Convexity.CONVEX, Convexity.PURELY_ACONVEX, Convexity.ACONVEX_MIXED):
            agreed += holds == (kind is Convexity.CONVEX)
    ok &= agreed == len(aconvex)
    verdict(8, ok, f"true on convex and Boolean models, false on H with witness; agrees "
                   f"with classification on {agreed}/{len(aconvex)} a-convex models")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
