"""Finite effect algebras given as explicit tables.

A :class:`FiniteEATable` stores a partial sum on indices ``0 .. size-1``
together with a complement map.  Index 0 is always the zero element; the
top element is stored explicitly as ``one``.

The sum is symmetrised when the table is built, so commutativity cannot be
broken afterwards.  Conflicting entries for ``(i, j)`` and ``(j, i)`` are a
:class:`StructuralError`, which is distinct from an axiom violation reported
by :func:`check_ea_axioms`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

UNDEF = -1


class StructuralError(ValueError):
    """The table is malformed (as opposed to violating an axiom)."""


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self) -> str:
        w = ", ".join(map(str, self.witness))
        return f"{self.axiom} [{w}]" + (f": {self.detail}" if self.detail else "")


@dataclass
class ValidationReport:
    """Violated axioms with witnesses; an empty report means valid.

    Only the first witness of each axiom kind is kept unless ``verbose``
    was requested by the checker.
    """

    violations: list[Violation] = field(default_factory=list)
    checked: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    properties: dict = field(default_factory=dict)
    verbose: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def add(self, axiom: str, witness: tuple, detail: str = "") -> None:
        if not self.verbose and any(v.axiom == axiom for v in self.violations):
            return
        self.violations.append(Violation(axiom, tuple(witness), detail))

    def count(self, what: str, n: int = 1) -> None:
        self.checked[what] = self.checked.get(what, 0) + n

    def merge(self, other: "ValidationReport", prefix: str = "") -> None:
        for v in other.violations:
            self.add(prefix + v.axiom, v.witness, v.detail)
        for k, n in other.checked.items():
            self.count(prefix + k, n)
        self.notes.extend(other.notes)


class FiniteEATable:
    """An effect algebra on ``{0, ..., size-1}`` with zero at index 0.

    Parameters
    ----------
    size:
        Number of elements.
    one:
        Index of the top element.
    sums:
        Triples ``(i, j, k)`` meaning ``i ⊻ j = k``.  Each unordered pair
        should be listed once; listing both orders is accepted only when the
        results agree.
    perp:
        The complement of every index.
    """

    def __init__(self, size: int, one: int, sums: Iterable[Sequence[int]],
                 perp: Sequence[int]):
        if size < 1:
            raise StructuralError(f"size must be positive, got {size}")
        if not 0 <= one < size:
            raise StructuralError(f"one={one} out of range for size {size}")
        perp = tuple(int(p) for p in perp)
        if len(perp) != size:
            raise StructuralError(f"perp has {len(perp)} entries, expected {size}")
        for i, p in enumerate(perp):
            if not 0 <= p < size:
                raise StructuralError(f"perp({i})={p} out of range")
        table = [[UNDEF] * size for _ in range(size)]
        for entry in sums:
            if len(entry) != 3:
                raise StructuralError(f"sum entry {entry!r} is not a triple")
            i, j, k = (int(x) for x in entry)
            for x in (i, j, k):
                if not 0 <= x < size:
                    raise StructuralError(f"sum entry {(i, j, k)} has index {x} out of range")
            for a, b in ((i, j), (j, i)):
                if table[a][b] not in (UNDEF, k):
                    raise StructuralError(
                        f"sum({a},{b}) stored inconsistently: {table[a][b]} and {k}")
                table[a][b] = k
        self.size = size
        self.zero = 0
        self.one = one
        self.perp = perp
        self._sum = tuple(tuple(row) for row in table)

    def sum(self, i: int, j: int) -> int | None:
        k = self._sum[i][j]
        return None if k == UNDEF else k

    def summable(self, i: int, j: int) -> bool:
        return self._sum[i][j] != UNDEF

    @property
    def sum_rows(self) -> tuple[tuple[int, ...], ...]:
        """Dense symmetric sum table, ``-1`` where undefined."""
        return self._sum

    def sum_triples(self) -> list[tuple[int, int, int]]:
        """Each defined sum once, as ``(i, j, k)`` with ``i <= j``."""
        return [(i, j, self._sum[i][j])
                for i in range(self.size) for j in range(i, self.size)
                if self._sum[i][j] != UNDEF]

    def relabel(self, perm: Sequence[int]) -> "FiniteEATable":
        """The isomorphic table with element ``i`` renamed ``perm[i]``."""
        if sorted(perm) != list(range(self.size)) or perm[0] != 0:
            raise ValueError("perm must be a permutation fixing 0")
        inv = [0] * self.size
        for i, p in enumerate(perm):
            inv[p] = i
        return FiniteEATable(
            self.size, perm[self.one],
            [(perm[i], perm[j], perm[k]) for i, j, k in self.sum_triples()],
            [perm[self.perp[inv[i]]] for i in range(self.size)])

    def __eq__(self, other) -> bool:
        return (isinstance(other, FiniteEATable) and self.size == other.size
                and self.one == other.one and self.perp == other.perp
                and self._sum == other._sum)

    def __hash__(self) -> int:
        return hash((self.size, self.one, self.perp, self._sum))

    def __repr__(self) -> str:
        return f"FiniteEATable(size={self.size}, one={self.one})"


@dataclass(frozen=True)
class OrderRelation:
    leq: tuple[tuple[bool, ...], ...]
    ominus: dict  # (j, i) -> k with i ⊻ k = j

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq[i][j]

    def rank(self) -> list[int]:
        """Length of the longest chain from 0 to each element."""
        n = len(self.leq)
        rank = [0] * n
        for _ in range(n):
            changed = False
            for i in range(n):
                for j in range(n):
                    if self.lt(j, i) and rank[j] + 1 > rank[i]:
                        rank[i] = rank[j] + 1
                        changed = True
            if not changed:
                break
        return rank


def check_ea_axioms(t: FiniteEATable, verbose: bool = False) -> ValidationReport:
    """Check commutativity, zero, associativity, unique complement and
    1-summability, keeping one witness per failed axiom."""
    rep = ValidationReport(verbose=verbose)
    n, S, one = t.size, t.sum_rows, t.one
    r = range(n)
    for i in r:
        for j in r:
            rep.count("commutativity")
            if S[i][j] != S[j][i]:
                rep.add("commutativity", (i, j))
    for i in r:
        rep.count("zero")
        if S[i][0] != i:
            rep.add("zero", (i,), f"{i} ⊻ 0 = {S[i][0] if S[i][0] != UNDEF else 'undefined'}")
    for i, j, k in itertools.product(r, r, r):
        s = S[i][j]
        if s == UNDEF or S[s][k] == UNDEF:
            continue
        rep.count("associativity")
        jk = S[j][k]
        if jk == UNDEF or S[i][jk] == UNDEF or S[i][jk] != S[s][k]:
            rep.add("associativity", (i, j, k))
    for i in r:
        rep.count("unique complement")
        comps = [j for j in r if S[i][j] == one]
        if comps != [t.perp[i]]:
            rep.add("unique complement", (i,),
                    f"perp({i})={t.perp[i]}, elements summing to one: {comps}")
    for i in r:
        rep.count("one-summability")
        if S[i][one] != UNDEF and i != 0:
            rep.add("one-summability", (i,), f"{i} ⊻ 1 is defined")
    return rep


def derive_order(t: FiniteEATable) -> OrderRelation:
    """``i ≤ j`` iff ``i ⊻ k = j`` for some ``k``; records ``j ⊖ i``."""
    n, S = t.size, t.sum_rows
    leq = [[False] * n for _ in range(n)]
    ominus = {}
    for i in range(n):
        for k in range(n):
            j = S[i][k]
            if j != UNDEF:
                leq[i][j] = True
                if (j, i) in ominus and ominus[(j, i)] != k:
                    raise StructuralError(
                        f"cancellation fails: {i} ⊻ {ominus[(j, i)]} = {i} ⊻ {k} = {j}")
                ominus[(j, i)] = k
    return OrderRelation(tuple(tuple(row) for row in leq), ominus)


def is_directed_complete_finite(t: FiniteEATable) -> tuple[bool, str]:
    """Finite posets are directed complete: a finite directed set holds an
    upper bound of its own elements, which is its maximum.

    The argument is re-checked on the derived order: every pair must have
    an upper bound (the top), and the order must be a partial order with
    bottom 0 and top ``one``.
    """
    order = derive_order(t)
    leq, n = order.leq, t.size
    for i in range(n):
        if not leq[i][i]:
            return False, f"reflexivity fails at {i}"
        if not (leq[0][i] and leq[i][t.one]):
            return False, f"{i} is not between 0 and 1"
        for j in range(n):
            if i != j and leq[i][j] and leq[j][i]:
                return False, f"antisymmetry fails at ({i},{j})"
            for k in range(n):
                if leq[i][j] and leq[j][k] and not leq[i][k]:
                    return False, f"transitivity fails at ({i},{j},{k})"
    return True, "finite partial order: every directed subset contains its maximum"


def lattice_ops(t: FiniteEATable):
    """Meet and join tables of the derived order (``None`` where missing)."""
    leq, n = derive_order(t).leq, t.size

    def best(cands, up):
        tops = [x for x in cands if all((leq[x][y] if up else leq[y][x]) for y in cands)]
        return tops[0] if len(tops) == 1 else None

    meet = [[best([x for x in range(n) if leq[x][a] and leq[x][b]], False)
             for b in range(n)] for a in range(n)]
    join = [[best([x for x in range(n) if leq[a][x] and leq[b][x]], True)
             for b in range(n)] for a in range(n)]
    return meet, join


def boolean_verdict(t: FiniteEATable) -> tuple[bool, dict]:
    """Whether the order is a Boolean algebra with ``perp`` as complement
    and the sum as disjoint join.  Details carry a witness per failure."""
    meet, join = lattice_ops(t)
    r = range(t.size)
    info: dict = {}
    missing = next(((a, b) for a in r for b in r
                    if meet[a][b] is None or join[a][b] is None), None)
    info["lattice"] = missing is None
    if missing is not None:
        info["lattice_witness"] = missing
        return False, info
    bad = next(((a, b, c) for a in r for b in r for c in r
                if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]), None)
    info["distributive"] = bad is None
    if bad is not None:
        info["distributive_witness"] = bad
    bad_c = next((a for a in r if meet[a][t.perp[a]] != 0 or join[a][t.perp[a]] != t.one), None)
    info["complemented"] = bad_c is None
    if bad_c is not None:
        info["complemented_witness"] = bad_c
    bad_s = next(((a, b) for a in r for b in r
                  if t.summable(a, b) != (meet[a][b] == 0)
                  or (t.summable(a, b) and t.sum(a, b) != join[a][b])), None)
    info["sum_is_disjoint_join"] = bad_s is None
    if bad_s is not None:
        info["sum_witness"] = bad_s
    ok = info["distributive"] and info["complemented"] and info["sum_is_disjoint_join"]
    return ok, info


# -- small constructors ---------------------------------------------------

def chain(n: int) -> FiniteEATable:
    """The MV-chain ``{0, 1/n, ..., 1}`` with truncated addition."""
    if n < 1:
        raise ValueError("chain length must be at least 1")
    sums = [(i, j, i + j) for i in range(n + 1) for j in range(i, n + 1) if i + j <= n]
    return FiniteEATable(n + 1, n, sums, [n - i for i in range(n + 1)])


def boolean_table(atoms: int) -> FiniteEATable:
    """The Boolean algebra of subsets of ``atoms`` atoms; index = bitmask."""
    size = 1 << atoms
    full = size - 1
    sums = [(i, j, i | j) for i in range(size) for j in range(i, size) if not i & j]
    return FiniteEATable(size, full, sums, [full ^ i for i in range(size)])


def diamond() -> FiniteEATable:
    """MO2: ``0, a, a⊥, b, b⊥, 1`` where only complementary pairs sum."""
    sums = [(0, i, i) for i in range(6)] + [(1, 2, 5), (3, 4, 5)]
    return FiniteEATable(6, 5, sums, [5, 2, 1, 4, 3, 0])


def trivial_table() -> FiniteEATable:
    """The one-element effect algebra where ``0 = 1``."""
    return FiniteEATable(1, 0, [(0, 0, 0)], [0])
