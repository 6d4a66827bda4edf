"""Exact storage/bandwidth tradeoffs of regenerating codes under helper selection.

The package evaluates min-cut conditions for blind, family and family-plus
helper selection with exact rational arithmetic, extracts tradeoff corner
points, and checks the closed forms against brute-force information flow
graph oracles.
"""

from .classify import Classification, classify, mbr_upper_bound_k_nm1
from .errors import (
    ConstraintViolation,
    InfeasibleBeta,
    InvalidHelperSet,
    PreconditionViolation,
    RegenError,
    SearchSpaceTooLarge,
)
from .formulas import (
    OperatingPoint,
    bhs_mincut,
    corollary_low_b,
    family_plus_mbr_point,
    family_plus_mincut,
    fhs_mbr_point,
    fhs_mincut,
    fhs_msr_point,
    prop13_mbr_value,
    shs_lower_bound,
)
from .model import (
    FamilyStructure,
    GroupPartition,
    SystemParams,
    build_family_plus_partition,
    build_family_structure,
    find_optimal_partition,
    validate_params,
)
from .perms import check_mbr_minimizer, enumerate_y_profiles, modify, rfip, y_offset, y_vector, z_vector
from .rational import INF, format_scalar, parse_scalar
from .tradeoff import compare_at_mbr, curve, k_sweep_mbr, min_alpha_given_beta

__version__ = "0.1.0"
