"""Exact R-matrices and L-operators for U_q(A_N) and U_q(G2)."""

from .algebra import AlgebraSpec, NcExpr, TensorExpr, a_n, algebra_from_name, antipode, coproduct, counit, g2
from .catalog import catalog_an, catalog_g2, minus_to_plus_transform
from .lops import LMatrix, e_nonsimple, lminus_from_r, lplus_from_r, perm_sum_u, verify_slices
from .pairing import DualPairSet, dual_pair_basis, gram_matrix, pair_words, truncated_r_terms
from .reps import Representation, check_hopf, check_relations, evaluate_expr, minimal_rep, tensor_rep
from .rmatrix import RMatrix, build_r, cartan_factor, check_intertwiner, check_ybe, r_inverse_via_antipode
from .scalars import QuadNumber, RatFunc, Scalar, ScalarSpec, eval_at_point, qbinom, qnum

__version__ = "0.1.0"
