"""Sequential effect algebras: finite tables, parametric models, axiom
checkers, product search and structural decomposition, in exact arithmetic."""
from .core import (FiniteEATable, StructuralError, ValidationReport, Violation,
                   boolean_table, boolean_verdict, chain, check_ea_axioms,
                   derive_order, diamond)
from .models import (Boolean, Corner, DirectSum, Finite, HorizontalSum, Interval,
                     MatrixInterval, Model)
from .sequential import (SeaCheckConfig, bicommutant, center, check_effect_monoid,
                         check_sea_axioms, check_sea_lemmas, commutant, divide_by_n,
                         floor, halves_of, sqrt)

__version__ = "0.1.0"

__all__ = [
    "FiniteEATable", "StructuralError", "ValidationReport", "Violation",
    "boolean_table", "boolean_verdict", "chain", "check_ea_axioms", "derive_order",
    "diamond", "Boolean", "Corner", "DirectSum", "Finite", "HorizontalSum",
    "Interval", "MatrixInterval", "Model", "SeaCheckConfig", "bicommutant",
    "center", "check_effect_monoid", "check_sea_axioms", "check_sea_lemmas",
    "commutant", "divide_by_n", "floor", "halves_of", "sqrt",
]
