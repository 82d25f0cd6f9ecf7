"""Compile curve isotopy questions into existential sentences over the reals."""

from isocurve.etrc.compiler import (
    Compiler,
    coded_polygon,
    crossing_order,
    crossing_signs,
    good_polygon,
    isotopic_to_polygon,
    num_crossings,
    sentence,
    well_formed,
    witness_assignment,
)
from isocurve.etrc.formula import (
    FALSE,
    TRUE,
    Add,
    And,
    Atom,
    BoolConst,
    Const,
    Exists,
    FormulaStats,
    MissingVariable,
    Mul,
    Not,
    Or,
    Sub,
    Var,
    conj,
    disj,
    evaluate,
    stats,
    variables_of,
)
from isocurve.etrc.serialize import DIALECTS, InfixSyntaxError, parse_infix, serialize, to_infix, to_smt2

__all__ = [
    "Compiler",
    "coded_polygon",
    "crossing_order",
    "crossing_signs",
    "good_polygon",
    "isotopic_to_polygon",
    "num_crossings",
    "sentence",
    "well_formed",
    "witness_assignment",
    "FALSE",
    "TRUE",
    "Add",
    "And",
    "Atom",
    "BoolConst",
    "Const",
    "Exists",
    "FormulaStats",
    "MissingVariable",
    "Mul",
    "Not",
    "Or",
    "Sub",
    "Var",
    "conj",
    "disj",
    "evaluate",
    "stats",
    "variables_of",
    "DIALECTS",
    "InfixSyntaxError",
    "parse_infix",
    "serialize",
    "to_infix",
    "to_smt2",
]
