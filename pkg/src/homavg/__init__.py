"""Exact-arithmetic checks for q-deformed Witt and W(2,2) Hom-algebras and their averaging operators."""

from .errors import DomainError, HomAvgError, InvalidBasis, InvalidParameter, SearchTooLarge, SingularAtDegree
from .scalars import Scalar, ScalarField, arith, brace_num, bracket_num, field_make, q_power
from .graded import (
    BasisIndex,
    Block,
    Element,
    HomAlgebra,
    HomogeneousOperator,
    L,
    W,
    identity_operator,
    induced_algebra,
    make_algebra,
    operator_from_function,
    w22,
    witt,
    zero_operator,
)
from .laws import Report, Window, Witness

__all__ = [
    "BasisIndex", "Block", "DomainError", "Element", "HomAlgebra", "HomAvgError", "HomogeneousOperator",
    "InvalidBasis", "InvalidParameter", "L", "Report", "Scalar", "ScalarField", "SearchTooLarge",
    "SingularAtDegree", "W", "Window", "Witness", "arith", "brace_num", "bracket_num", "field_make",
    "identity_operator", "induced_algebra", "make_algebra", "operator_from_function", "q_power", "w22",
    "witt", "zero_operator",
]
