"""Exact symbolic parameter differential equations for the classical groups and G2.

The package builds the explicit Chevalley-basis matrix representations of
sl_{l+1}, sp_{2l}, so_{2l+1}, so_{2l} and g2, the parameter planes
A_0^+ + sum t_i X_{-gamma_i} over the differential ring in jet variables,
and mechanically verifies the computational facts they rest on: exponents
via the height census, complementary roots, Kostant-style direct sums,
gauge reduction onto the complementary plane, cyclic-vector scalarization
into the five classical operators, formal adjoints, and truncated Taylor
solutions together with their specialization diagram.
"""

from .scalars import FIELD_Q, FIELD_QSQRT2, SQRT2, Scalar, invert, normalize
from .jets import (DiffPoly, DiffRat, JetVar, derive, diff_equals, jet,
                   jet_evaluate, parse_diffrat, parse_scalar)
from .unipoly import SpecializationError, UniPoly, UniRat, specialize
from .roots import (Root, RootSystem, build_root_system, height,
                    classical_exponents, supported_systems)
from .chevalley import (ChevalleyRep, bracket, build_rep, centralizer_basis,
                        complement_rank_test, find_complementary_roots,
                        matrix_from_json, matrix_in_span, matrix_to_json,
                        parameter_matrix, principal_nilpotents,
                        verify_bplus_decomposition, w_basis)
from .gauge import (GaugeElement, exp_root, gauge_apply, log_derivative,
                    matrices_equal, reduce_to_complement)
from .operators import (CyclicityError, LinDiffOp, adjoint_symmetry,
                        find_cyclic_index, formal_adjoint, matrix_to_scalar,
                        reference_operator, reference_operator_latex)
from .series import (JetPoint, SeriesMatrix, derivative_matrices, diagram_check,
                     ode_residual, operator_annihilates, taylor_solution)
from .verify import VerifyReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "FIELD_Q", "FIELD_QSQRT2", "SQRT2", "Scalar", "invert", "normalize",
    "DiffPoly", "DiffRat", "JetVar", "derive", "diff_equals", "jet",
    "jet_evaluate", "parse_diffrat", "parse_scalar",
    "SpecializationError", "UniPoly", "UniRat", "specialize",
    "Root", "RootSystem", "build_root_system", "height",
    "classical_exponents", "supported_systems",
    "ChevalleyRep", "bracket", "build_rep", "centralizer_basis",
    "complement_rank_test", "find_complementary_roots", "matrix_from_json",
    "matrix_in_span", "matrix_to_json", "parameter_matrix",
    "principal_nilpotents", "verify_bplus_decomposition", "w_basis",
    "GaugeElement", "exp_root", "gauge_apply", "log_derivative",
    "matrices_equal", "reduce_to_complement",
    "CyclicityError", "LinDiffOp", "adjoint_symmetry", "find_cyclic_index",
    "formal_adjoint", "matrix_to_scalar", "reference_operator",
    "reference_operator_latex",
    "JetPoint", "SeriesMatrix", "derivative_matrices", "diagram_check",
    "ode_residual", "operator_annihilates", "taylor_solution",
    "VerifyReport", "run_suite",
]
