"""Exact decision procedures for partition regularity, with certificates.

The package decides whether equation systems are partition regular:
linear systems via the columns condition, two-variable polynomial
systems and S-unit equations via constant solutions, and
polynomial-exponential equations via diagonal exponential sums with
dominance and modular certificates.  A finite coloring-search engine
cross-validates verdicts empirically.
"""

from .algebra import (
    DEFAULT_FACTOR_BUDGET,
    IncompleteFactorization,
    MultiPoly,
    RatMatrix,
    UniPoly,
    divides_x_minus_y,
    divisors_from_factors,
    factor_integer,
    integer_roots,
    matrix_rank,
    poly_diagonal,
    poly_eval,
)
from .equations import (
    ClassifyError,
    EquationAST,
    GeneralPolySystem,
    LinearSystem,
    ParseError,
    SchemaError,
    TwoVarPolySystem,
    class_from_json,
    class_to_json,
    classify,
    format_system,
    from_json,
    parse_equation_text,
    to_json,
)
from .rado import (
    LinearVerdict,
    columns_condition,
    constant_solution_linear,
    decide_linear,
    rado_single,
    verify_columns_condition,
)
from .diophantine import (
    TwoVarVerdict,
    decide_infinitely_pr,
    decide_twovar,
    twovar_from_linear,
)
from .sunit import (
    GroupSpec,
    SUnitVerdict,
    count_unit_equation_solutions,
    decide_sunit_3var,
    enumerate_group_elements,
    make_group,
    subgroup_rank,
    sunit_solution_bound,
    two_term_unit_bound,
)
from .polyexp import (
    ABConstants,
    BranchCertificate,
    ConstantSolutionResult,
    DominanceCertificate,
    ExpSum,
    HypothesisReport,
    ModularCertificate,
    PolyExpEquation,
    PolyExpTerm,
    PolyExpVerdict,
    bell_number,
    character_group_trivial,
    check_hypothesis,
    compute_constants,
    decide_constant_solution,
    decide_polyexp_pr,
    diagonalize,
    dominance_bound,
    enumerate_partitions,
    modular_certificate_search,
    mutually_coprime,
    polyexp_eval,
    solution_count_bound,
    verify_dominance,
    verify_modular,
)
from .ramsey import (
    BudgetExceeded,
    SearchResult,
    canonical_coloring,
    enumerate_solutions,
    filter_injectivity,
    search_avoiding_coloring,
    verify_coloring,
)

__version__ = "0.1.0"

__all__ = [
    "ABConstants",
    "BranchCertificate",
    "BudgetExceeded",
    "ClassifyError",
    "ConstantSolutionResult",
    "DEFAULT_FACTOR_BUDGET",
    "DominanceCertificate",
    "EquationAST",
    "ExpSum",
    "GeneralPolySystem",
    "GroupSpec",
    "HypothesisReport",
    "IncompleteFactorization",
    "LinearSystem",
    "LinearVerdict",
    "ModularCertificate",
    "MultiPoly",
    "ParseError",
    "PolyExpEquation",
    "PolyExpTerm",
    "PolyExpVerdict",
    "RatMatrix",
    "SUnitVerdict",
    "SchemaError",
    "SearchResult",
    "TwoVarPolySystem",
    "TwoVarVerdict",
    "UniPoly",
    "bell_number",
    "canonical_coloring",
    "character_group_trivial",
    "check_hypothesis",
    "class_from_json",
    "class_to_json",
    "classify",
    "columns_condition",
    "compute_constants",
    "constant_solution_linear",
    "count_unit_equation_solutions",
    "decide_constant_solution",
    "decide_infinitely_pr",
    "decide_linear",
    "decide_polyexp_pr",
    "decide_sunit_3var",
    "decide_twovar",
    "diagonalize",
    "divides_x_minus_y",
    "divisors_from_factors",
    "dominance_bound",
    "enumerate_group_elements",
    "enumerate_partitions",
    "enumerate_solutions",
    "factor_integer",
    "filter_injectivity",
    "format_system",
    "from_json",
    "integer_roots",
    "make_group",
    "matrix_rank",
    "modular_certificate_search",
    "mutually_coprime",
    "parse_equation_text",
    "poly_diagonal",
    "poly_eval",
    "polyexp_eval",
    "rado_single",
    "search_avoiding_coloring",
    "solution_count_bound",
    "subgroup_rank",
    "sunit_solution_bound",
    "to_json",
    "two_term_unit_bound",
    "twovar_from_linear",
    "verify_coloring",
    "verify_columns_condition",
    "verify_dominance",
    "verify_modular",
]
