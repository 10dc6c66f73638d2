"""Householder-based Hessenberg-triangular reduction."""
from .bench import reduce_pencil, run_suite
from .errors import (ContractViolation, HouseHTError, NumericalFailure,
                     ParseError, SingularSystemError, UnsupportedFormatError)
from .factorizations import (LuFactors, lq_wy, lu_pp, ql_wy, qr_wy,
                             reduced_left_transform, reduced_right_transform, rq_wy)
from .generators import gen_random_pencil, gen_saddlepoint, gen_tiny_diagonal_pencil
from .givens import GivensRotation, givens, reduce_givens
from .ht_basic import reduce_basic
from .ht_blocked import PanelState, absorb_left, absorb_right, house_ht
from .matrix import U, DenseMatrix, FlopCounter, frob_norm, gemm_acc, structure_defect
from .mmio import mm_read, mm_write
from .pencil_solve import (BlockTriangularB, SolveOutcome, block_back_substitute,
                           desingularize_diagonal, opposite_reflector_first,
                           residual_e1, solve_factored_e1, solve_with_refinement)
from .preprocess import deflate_zero_columns, reduce_with_preprocessing
from .reflectors import (CompactWY, Reflector, RegularWY, apply_reflector, house,
                         wy_append, wy_apply, wy_to_regular)
from .report import HtConfig, ReductionReport
from .verify import VerificationResult, verify
