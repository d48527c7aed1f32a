"""Exact toolkit for algebraic ordinary differential equations.

Decides the structural properties that make polynomial and rational solving
possible (noncritical, maximally comparable, completely maximally
comparable), computes indicial polynomials and order bounds at finite places
and infinity, and enumerates all polynomial and rational-function solutions
as verified parameterized families.
"""

from .analysis import (
    Classification,
    Comparison,
    INFINITY,
    IndicialData,
    Point,
    ResiduePoly,
    b_bound,
    classify,
    compare_gg,
    greatest_element,
    indicial_data,
    indicial_polynomial,
    integer_root_bound,
    laurent_order_bound,
    newton_data,
)
from .diffpoly import (
    DiffPoly,
    ParamPoly,
    ParamRFunc,
    evaluate,
    exp_norms,
    normalize,
    supports,
)
from .engine import (
    Ansatz,
    SolutionFamily,
    SolveReport,
    build_poly_ansatz,
    build_rational_ansatz,
    extract_system,
    poly_degree_bound,
    polynomial_solutions,
    rational_solutions,
    verify,
)
from .errors import (
    AnsatzCapError,
    AodeError,
    CapError,
    CriticalEquationError,
    DegenerateEquationError,
    FactorDegreeCapError,
    NotADifferentialEquationError,
    ParseError,
    ReductionBudgetError,
    UndefinedOrderError,
    ZeroIndicialError,
)
from .factor import factor_irreducible, is_irreducible
from .groebner import GroebnerBasis, buchberger, normal_form, solve_system
from .mpoly import MPoly
from .parser import parse_equation, parse_poly
from .render import render, to_json
from .upoly import (
    RFunc,
    Residue,
    UPoly,
    integer_roots,
    lowest_coeff_at_factor,
    lowest_coeff_at_infinity,
    ord_at_factor,
    ord_at_infinity,
    rational_roots,
    squarefree_factorization,
)

__version__ = "0.1.0"
