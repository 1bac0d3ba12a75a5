"""Constrained zero-sums over prime fields: SIS-infinity, subset-sum and CIS solvers."""

from .arith import APWitness, antipodal_hole, find_ap, lev_long_ap, middle_3ap, window_3ap
from .avgcase import affine_transfer, cis_simple, combine_012_to_01, solve_012, subset_sum_random
from .core import (
    Binary,
    Explicit,
    Forbidden,
    Interval,
    Problem,
    Ternary012,
    VerifyReport,
    parse_constraint,
    sparsity,
    verify,
)
from .errors import FailureError, PreconditionError, ZSFError
from .f3 import f3_solve, f3_sparse_dependence
from .ff import Modulus, balanced_lift, check_prime, inverse, is_prime
from .general import (
    CoeffSet,
    GeneralReducible,
    cis_centered,
    cis_full,
    cis_paired,
    lift_zero_sum,
    nontrivial_start,
    plan_cis_full,
    reducible_simple,
    reducible_tree,
    sis_one_shot,
    size_two,
    subset_sum_improved,
)
from .halving import Reducible, iterate_halving, reducible_from_zero_sum, sis_power2, sis_quarter, sparse_full_zero_sum
from .linalg import VecFamily, find_dependency, max_independent, span_split
from .oracle import brute_solve, totality_check
from .thresholds import f3_threshold, thresholds

__version__ = "0.1.0"
