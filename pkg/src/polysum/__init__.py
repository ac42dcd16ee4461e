"""Weighted sums of generalized polygonal numbers with coefficients 1 or 2."""

from polysum.lattice import (
    CASES,
    BinaryGram,
    QuaternaryCase,
    apply_isometry,
    binary_represented,
    hyperplane_witness,
    in_obstruction,
    lift_to_polygonal,
    solve_system,
    ternary_represents,
)
from polysum.nonrep import default_seed, family, family_member, mult_order, verify_not_represented
from polysum.polygonal import (
    coeff_vector,
    evaluate,
    exceptional_set,
    generalized_values_up_to,
    pm_value,
    represents,
)
from polysum.solver import (
    BelowThreshold,
    UnsupportedConfiguration,
    construct,
    constructive_represent,
    select_linear_sum,
    selection_interval,
)
from polysum.universality import (
    classify,
    classify_by_criterion,
    classify_closed_form,
    classify_small_m,
    min_universal_length,
    necessary_conditions,
    residue_cover,
    verify_large_m,
)

__version__ = "0.1.0"
