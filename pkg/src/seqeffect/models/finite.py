from __future__ import annotations

import itertools
import random
from functools import cached_property
from typing import Sequence

from ..core import FiniteEATable, StructuralError, derive_order
from .base import Model, UnsupportedError


class FiniteModel(Model):
    """An explicit table, optionally with a sequential product table."""

    finite = True

    def __init__(self, table: FiniteEATable,
                 product: Sequence[Sequence[int]] | None = None):
        self.table = table
        self.zero = 0
        self.one = table.one
        if product is not None:
            product = tuple(tuple(int(x) for x in row) for row in product)
            n = table.size
            if len(product) != n or any(len(row) != n for row in product):
                raise StructuralError(f"product table must be {n}x{n}")
            if any(not 0 <= x < n for row in product for x in row):
                raise StructuralError("product table has an index out of range")
        self.product_table = product
        self.has_product = product is not None

    @cached_property
    def order(self):
        return derive_order(self.table)

    def check(self, e) -> None:
        if isinstance(e, bool) or not isinstance(e, int):
            raise TypeError(f"finite model elements are indices, got {e!r}")

    def contains(self, e) -> bool:
        self.check(e)
        return 0 <= e < self.table.size

    def sum(self, a, b):
        return self.table.sum(a, b)

    def perp(self, a):
        return self.table.perp[a]

    def leq(self, a, b) -> bool:
        return self.order.leq[a][b]

    def ominus(self, b, a):
        return self.order.ominus.get((b, a))

    def product(self, a, b):
        if self.product_table is None:
            return super().product(a, b)
        return self.product_table[a][b]

    def cardinality(self) -> int:
        return self.table.size

    def elements(self) -> list:
        return list(range(self.table.size))

    def halves(self, a) -> list:
        return [b for b in range(self.table.size) if self.table.sum(b, b) == a]

    def __repr__(self) -> str:
        tag = "" if self.has_product else ", no product"
        return f"Finite(size={self.table.size}{tag})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, FiniteModel) and self.table == other.table
                and self.product_table == other.product_table)

    def __hash__(self) -> int:
        return hash((self.table, self.product_table))


def meet_product(table: FiniteEATable) -> tuple[tuple[int, ...], ...] | None:
    """The lattice meet as a product table, or ``None`` if some meet is missing."""
    leq = derive_order(table).leq
    n = table.size
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            lower = [x for x in range(n) if leq[x][a] and leq[x][b]]
            tops = [x for x in lower if all(leq[y][x] for y in lower)]
            if len(tops) != 1:
                return None
            row.append(tops[0])
        rows.append(tuple(row))
    return tuple(rows)


class BooleanModel(Model):
    """The Boolean algebra of subsets of ``atoms`` atoms, product = meet.

    Elements are frozensets of atom indices.
    """

    finite = True
    has_product = True

    def __init__(self, atoms: int):
        if isinstance(atoms, bool) or not isinstance(atoms, int) or atoms < 1:
            raise ValueError(f"Boolean needs a positive atom count, got {atoms!r}")
        self.atoms = atoms
        self.zero = frozenset()
        self.one = frozenset(range(atoms))

    def check(self, e) -> None:
        if not isinstance(e, frozenset):
            raise TypeError(f"Boolean elements are frozensets of atoms, got {e!r}")

    def contains(self, e) -> bool:
        self.check(e)
        return all(isinstance(x, int) and 0 <= x < self.atoms for x in e)

    def sum(self, a, b):
        return None if a & b else a | b

    def perp(self, a):
        return self.one - a

    def leq(self, a, b) -> bool:
        return a <= b

    def ominus(self, b, a):
        return b - a if a <= b else None

    def product(self, a, b):
        return a & b

    def cardinality(self) -> int:
        return 1 << self.atoms

    def elements(self) -> list:
        return [frozenset(c) for k in range(self.atoms + 1)
                for c in itertools.combinations(range(self.atoms), k)]

    def draw(self, rng: random.Random):
        return frozenset(i for i in range(self.atoms) if rng.random() < 0.5)

    def center_rule(self):
        return (lambda e: True), "whole algebra (commutative)", None, []

    def commutant_rule(self, S):
        return (lambda e: True), "whole algebra (commutative)", None, []

    def floor(self, a):
        return a

    def halves(self, a) -> list:
        return [a] if not a else []

    def sqrt(self, a):
        return a, True

    def divide(self, a, n: int):
        if a:
            raise UnsupportedError("only 0 is divisible in a Boolean algebra")
        return a

    def to_table(self) -> FiniteModel:
        """The same algebra as an explicit table indexed by bitmask."""
        from ..core import boolean_table
        t = boolean_table(self.atoms)
        prod = [[i & j for j in range(t.size)] for i in range(t.size)]
        return FiniteModel(t, prod)

    def __repr__(self) -> str:
        return f"Boolean({self.atoms})"

    def __eq__(self, other) -> bool:
        return isinstance(other, BooleanModel) and self.atoms == other.atoms

    def __hash__(self) -> int:
        return hash(("Boolean", self.atoms))


def bits(*atoms: int) -> frozenset:
    return frozenset(atoms)

