"""Exhaustive search for sequential products on a finite effect algebra.

The pruned search fills the product table cell by cell.  Rows 0 and 1 and
columns 0 and 1 are forced (``0∘a = a∘0 = 0``, ``1∘a = a∘1 = a``), every
other cell ranges over the elements below its row (``a∘b ≤ a∘1 = a``; for
effect monoids also below its column), and each assignment propagates:

* additivity along the row (and, for monoids, along the column), in both
  directions: ``a∘(x⊻y)`` is forced by ``a∘x`` and ``a∘y``, and ``a∘y``
  is forced by ``a∘(x⊻y)`` and ``a∘x`` via ``⊖``;
* zero symmetry ``a∘b = 0 ⟹ b∘a = 0`` (SEA axiom sets);
* ``a | b ⟹ a | b⊥`` on pairs whose four entries are known.

Complete tables are checked against the remaining axioms and then
re-validated by the independent checkers in :mod:`seqeffect.sequential`.
Nothing is cut heuristically, so the enumeration is complete.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

from .core import (UNDEF, FiniteEATable, StructuralError, boolean_verdict,
                   check_ea_axioms, derive_order)
from .models import FiniteModel, meet_product
from .sequential import SeaCheckConfig, check_effect_monoid, check_sea_axioms

DEFAULT_SIZE_BOUND = 12
NAIVE_SIZE_BOUND = 6

Table = tuple[tuple[int, ...], ...]


class AxiomSet(enum.Enum):
    SEA = "sea"
    EFFECT_MONOID = "monoid"
    EFFECT_MONOID_WITH_S3 = "monoid+s3"


class SearchRefused(ValueError):
    pass


@dataclass
class SearchProblem:
    ea: FiniteEATable
    axiom_set: AxiomSet = AxiomSet.SEA
    max_solutions: int | None = None
    canonicalize: bool = False
    size_bound: int = DEFAULT_SIZE_BOUND

    def __post_init__(self):
        if self.max_solutions is not None and self.max_solutions < 1:
            raise ValueError("max_solutions must be positive (or None for all)")


@dataclass
class SearchResult:
    solutions: list[Table]
    node_count: int = 0
    pruned_count: int = 0
    complete: bool = True
    boolean_verdict: bool | None = None
    boolean_info: dict = field(default_factory=dict)
    raw_count: int = 0
    meet: Table | None = None
    zero_symmetric: list[bool] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.solutions)

    def is_meet(self, sol: Table) -> bool:
        return self.meet is not None and sol == self.meet


def _validate(p: SearchProblem) -> None:
    t = p.ea
    if t.size > p.size_bound:
        raise SearchRefused(f"table has {t.size} elements; the search bound is {p.size_bound}")
    rep = check_ea_axioms(t)
    if not rep.ok:
        raise StructuralError(f"not an effect algebra: {rep.violations[0]}")


def _revalidate(t: FiniteEATable, sol: Table, axioms: AxiomSet) -> None:
    m = FiniteModel(t, sol)
    cfg = SeaCheckConfig(check_s6=False)
    if axioms is AxiomSet.SEA:
        rep = check_sea_axioms(m, cfg)
    else:
        rep = check_effect_monoid(m, cfg)
        if axioms is AxiomSet.EFFECT_MONOID_WITH_S3 and not rep.properties["zero_product_symmetric"]:
            rep.add("S3", (), "zero products not symmetric")
    if not rep.ok:
        raise AssertionError(f"search emitted an invalid table: {rep.violations[0]}")


# -- the pruned search ---------------------------------------------------------

class _Solver:
    def __init__(self, t: FiniteEATable, axioms: AxiomSet, limit: int | None):
        self.t, self.axioms, self.limit = t, axioms, limit
        self.n = n = t.size
        self.S = t.sum_rows
        order = derive_order(t)
        self.leq, self.ominus = order.leq, order.ominus
        self.monoid = axioms is not AxiomSet.SEA
        self.s3 = axioms is not AxiomSet.EFFECT_MONOID
        # (x, y, z) with x ⊻ y = z, indexed by x
        self.triples = [[(y, self.S[x][y]) for y in range(n) if self.S[x][y] != UNDEF]
                        for x in range(n)]
        self.P = [[None] * n for _ in range(n)]
        self.trail: list[tuple[int, int]] = []
        self.nodes = self.pruned = 0
        self.found: list[Table] = []
        self.order = self._cell_order(order)

    def _cell_order(self, order) -> list[tuple[int, int]]:
        t, n, leq = self.t, self.n, self.leq
        rank = order.rank()
        inner = [a for a in range(n) if a not in (0, t.one)]
        sharp = {a for a in inner
                 if not any(x != 0 and leq[x][a] and leq[x][t.perp[a]] for x in range(n))}
        rows = sorted(inner, key=lambda a: (a not in sharp, rank[a], a))
        cols = sorted(inner, key=lambda b: (rank[b], b))
        return [(a, b) for a in rows for b in cols]

    def domain(self, a: int, b: int) -> list[int]:
        leq = self.leq
        return [v for v in range(self.n)
                if leq[v][a] and (not self.monoid or leq[v][b])]

    # assignment with propagation; returns False on contradiction
    def assign(self, a: int, b: int, v: int) -> bool:
        stack = [(a, b, v)]
        while stack:
            a, b, v = stack.pop()
            cur = self.P[a][b]
            if cur is not None:
                if cur != v:
                    return False
                continue
            if not self.leq[v][a] or (self.monoid and not self.leq[v][b]):
                return False
            self.P[a][b] = v
            self.trail.append((a, b))
            if not self._row(a, b, v, stack):
                return False
            if self.monoid and not self._col(a, b, v, stack):
                return False
            if self.s3 and not self._zero_sym(a, b, v, stack):
                return False
            if not self.monoid and not self._commute_perp(a, b):
                return False
        return True

    def _additive(self, x, vx, get, put, stack) -> bool:
        S, om = self.S, self.ominus
        for y, z in self.triples[x]:
            vy, vz = get(y), get(z)
            if vy is not None:
                s = S[vx][vy]
                if s == UNDEF or (vz is not None and vz != s):
                    return False
                if vz is None:
                    stack.append(put(z, s))
            elif vz is not None:
                d = om.get((vz, vx))
                if d is None:
                    return False
                stack.append(put(y, d))
        return True

    def _row(self, a, b, v, stack) -> bool:
        row = self.P[a]
        return self._additive(b, v, row.__getitem__, lambda c, w: (a, c, w), stack)

    def _col(self, a, b, v, stack) -> bool:
        P = self.P
        return self._additive(a, v, lambda r: P[r][b], lambda r, w: (r, b, w), stack)

    def _zero_sym(self, a, b, v, stack) -> bool:
        back = self.P[b][a]
        if v == 0:
            if back is None:
                stack.append((b, a, 0))
            elif back != 0:
                return False
        elif back == 0:
            return False
        return True

    def _commute_perp(self, a, b) -> bool:
        P, perp = self.P, self.t.perp
        for x, y in ((a, b), (b, a)):
            if P[x][y] is None or P[x][y] != P[y][x]:
                continue
            yp = perp[y]
            if P[x][yp] is not None and P[yp][x] is not None and P[x][yp] != P[yp][x]:
                return False
        return True

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            a, b = self.trail.pop()
            self.P[a][b] = None

    def seed(self) -> bool:
        n, one = self.n, self.t.one
        for x in range(n):
            for a, b, v in ((0, x, 0), (x, 0, 0), (one, x, x), (x, one, x)):
                if not self.assign(a, b, v):
                    return False
        return True

    def run(self) -> None:
        if self.n == 1:
            self.found.append(((0,),))
            return
        if self.seed():
            self._search(0)
        else:
            self.pruned += 1

    def _search(self, i: int) -> bool:
        """Returns False once the solution limit is reached."""
        order, P = self.order, self.P
        while i < len(order) and P[order[i][0]][order[i][1]] is not None:
            i += 1
        if i == len(order):
            table = tuple(tuple(row) for row in P)
            if self._complete_ok(table):
                self.found.append(table)
                if self.limit is not None and len(self.found) >= self.limit:
                    return False
            else:
                self.pruned += 1
            return True
        a, b = order[i]
        for v in self.domain(a, b):
            self.nodes += 1
            mark = len(self.trail)
            if self.assign(a, b, v):
                if not self._search(i + 1):
                    self.undo(mark)
                    return False
            else:
                self.pruned += 1
            self.undo(mark)
        return True

    def _complete_ok(self, P: Table) -> bool:
        r, S = range(self.n), self.S
        if self.monoid:
            return all(P[a][P[b][c]] == P[P[a][b]][c] for a in r for b in r for c in r)
        com = [[P[a][b] == P[b][a] for b in r] for a in r]
        for a in r:
            for b in r:
                if not com[a][b]:
                    continue
                if not com[a][self.t.perp[b]]:
                    return False
                for c in r:
                    if P[a][P[b][c]] != P[P[a][b]][c]:
                        return False
                    if com[c][a] and com[c][b]:
                        if not com[c][P[a][b]]:
                            return False
                        s = S[a][b]
                        if s != UNDEF and not com[c][s]:
                            return False
        return True


def _search(p: SearchProblem) -> SearchResult:
    _validate(p)
    solver = _Solver(p.ea, p.axiom_set, None if p.canonicalize else p.max_solutions)
    solver.run()
    sols = sorted(solver.found)
    for sol in sols:
        _revalidate(p.ea, sol, p.axiom_set)
    raw = len(sols)
    if p.canonicalize:
        autos = automorphisms(p.ea)
        sols = sorted({canonical_form(sol, autos) for sol in sols})
        if p.max_solutions is not None:
            sols = sols[:p.max_solutions]
    complete = p.max_solutions is None or raw < p.max_solutions or p.canonicalize
    res = SearchResult(sols, solver.nodes, solver.pruned, complete, raw_count=raw,
                       meet=meet_product(p.ea))
    if p.axiom_set is not AxiomSet.SEA:
        res.zero_symmetric = [_zero_symmetric(s) for s in sols]
    return res


def _zero_symmetric(P: Table) -> bool:
    r = range(len(P))
    return all((P[a][b] == 0) == (P[b][a] == 0) for a in r for b in r)


def search_products(p: SearchProblem) -> SearchResult:
    """All SEA products (axioms S1–S5) on ``p.ea``.

    S6 is not searched for: a finite poset is directed complete and every
    directed subset contains its supremum, so normality holds automatically.
    """
    if p.axiom_set is not AxiomSet.SEA:
        raise ValueError("search_products handles the SEA axiom set; "
                         "use search_effect_monoids for monoids")
    res = _search(p)
    res.boolean_verdict, res.boolean_info = boolean_verdict(p.ea)
    return res


def search_effect_monoids(p: SearchProblem) -> SearchResult:
    """All effect-monoid multiplications; ``zero_symmetric`` flags the
    solutions that also satisfy ``a·b = 0 ⟹ b·a = 0``."""
    if p.axiom_set is AxiomSet.SEA:
        raise ValueError("search_effect_monoids needs a monoid axiom set")
    return _search(p)


# -- naive oracle ------------------------------------------------------------------

def _additive_rows(t: FiniteEATable, a: int) -> list[tuple[int, ...]]:
    n, S = t.size, t.sum_rows
    out = []
    for f in itertools.product(range(n), repeat=n):
        if f[t.one] != a:
            continue
        ok = True
        for x in range(n):
            for y in range(x, n):
                z = S[x][y]
                if z != UNDEF and S[f[x]][f[y]] != f[z]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(f)
    return out


def naive_search(t: FiniteEATable, axioms: AxiomSet = AxiomSet.SEA) -> list[Table]:
    """Reference enumeration without propagation, for tables of at most six
    elements.

    Each row ``a∘-`` is drawn from all ``n^n`` maps that are additive with
    ``a∘1 = a``; every combination of rows is handed to the axiom checker.
    (``a∘1 = a`` holds in any SEA: ``0 | a`` gives ``a | 0⊥ = 1`` by S4.)
    """
    if t.size > NAIVE_SIZE_BOUND:
        raise SearchRefused(f"naive search is capped at {NAIVE_SIZE_BOUND} elements")
    rows = [_additive_rows(t, a) for a in range(t.size)]
    cfg = SeaCheckConfig(check_s6=False)
    out = []
    for combo in itertools.product(*rows):
        m = FiniteModel(t, combo)
        if axioms is AxiomSet.SEA:
            ok = check_sea_axioms(m, cfg).ok
        else:
            rep = check_effect_monoid(m, cfg)
            ok = rep.ok and (axioms is AxiomSet.EFFECT_MONOID
                             or rep.properties["zero_product_symmetric"])
        if ok:
            out.append(tuple(tuple(r) for r in combo))
    return sorted(out)


# -- symmetry --------------------------------------------------------------------

def automorphisms(t: FiniteEATable) -> list[tuple[int, ...]]:
    """All permutations of the carrier preserving the partial sum."""
    n, S = t.size, t.sum_rows
    rank = derive_order(t).rank()
    degree = [sum(1 for y in range(n) if S[x][y] != UNDEF) for x in range(n)]
    sig = [(rank[x], degree[x]) for x in range(n)]
    perm = [None] * n
    used = [False] * n
    out = []

    def consistent(x: int) -> bool:
        for y in range(x + 1):
            z = S[x][y]
            img = S[perm[x]][perm[y]]
            if z == UNDEF:
                if img != UNDEF:
                    return False
            elif z <= x and img != perm[z]:
                return False
            elif z > x and img == UNDEF:
                return False
        # sums landing on x from earlier pairs
        for y in range(x):
            for w in range(y, x):
                if S[y][w] == x and S[perm[y]][perm[w]] != perm[x]:
                    return False
        return True

    def go(x: int) -> None:
        if x == n:
            out.append(tuple(perm))
            return
        for c in range(n):
            if not used[c] and sig[c] == sig[x]:
                perm[x], used[c] = c, True
                if consistent(x):
                    go(x + 1)
                used[c] = False
        perm[x] = None

    go(0)
    return out


def relabel_product(P: Table, perm) -> Table:
    n = len(P)
    Q = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            Q[perm[a]][perm[b]] = perm[P[a][b]]
    return tuple(tuple(r) for r in Q)


def canonical_form(P: Table, autos) -> Table:
    return min(relabel_product(P, g) for g in autos)


# -- the finite corollary ------------------------------------------------------------

@dataclass
class CorollaryRow:
    name: str
    size: int
    solutions: int
    boolean: bool
    all_meet: bool
    consistent: bool
    nodes: int


@dataclass
class CorollaryReport:
    rows: list[CorollaryRow]

    @property
    def candidates(self) -> list[CorollaryRow]:
        """Rows contradicting the corollary (an implementation bug if any)."""
        return [r for r in self.rows if not r.consistent]

    @property
    def ok(self) -> bool:
        return not self.candidates


def verify_finite_boolean_corollary(eas, size_bound: int = DEFAULT_SIZE_BOUND) -> CorollaryReport:
    """For each table: any SEA product forces a Boolean algebra whose only
    product is the meet; Boolean tables carry exactly one product.

    ``eas`` is a list of tables or of ``(name, table)`` pairs.
    """
    rows = []
    for k, item in enumerate(eas):
        name, t = item if isinstance(item, tuple) else (f"table{k}", item)
        res = search_products(SearchProblem(t, size_bound=size_bound))
        all_meet = all(res.is_meet(s) for s in res.solutions)
        if res.boolean_verdict:
            consistent = res.count == 1 and all_meet
        else:
            consistent = res.count == 0
        rows.append(CorollaryRow(name, t.size, res.count, bool(res.boolean_verdict),
                                 all_meet, consistent, res.node_count))
    return CorollaryReport(rows)


def table_of(m, size_bound: int = DEFAULT_SIZE_BOUND) -> tuple[FiniteEATable, list]:
    """An explicit table for a finite model, with the element behind each
    index (zero first)."""
    if not m.finite:
        raise SearchRefused("search requires finite model")
    if m.cardinality() > size_bound:
        raise SearchRefused(f"model has {m.cardinality()} elements; "
                            f"the search bound is {size_bound}")
    els = [m.zero] + [e for e in m.elements() if e != m.zero]
    index = {e: i for i, e in enumerate(els)}
    sums = [(i, j, index[s]) for i, a in enumerate(els) for j, b in enumerate(els)
            if i <= j and (s := m.sum(a, b)) is not None]
    perp = [index[m.perp(a)] for a in els]
    return FiniteEATable(len(els), index[m.one], sums, perp), els
