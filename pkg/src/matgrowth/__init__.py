"""Fastest, average and generic growth of entries in products of two 2x2 matrices."""
from .algebra import (
    IDENTITY,
    Mat2,
    eval_word,
    l1_norm,
    lower_shear,
    mat_mul,
    max_abs_entry,
    mean_matrix,
    parse_matrix_spec,
    parse_word,
    render_matrix,
    render_word,
    spectral_radius,
    upper_shear,
)
from .average import (
    average_growth_rate,
    empirical_mean_check,
    expectation_sequence,
    expected_entries,
    recurrence_spec,
)
from .errors import (
    DomainError,
    InputError,
    InvariantViolation,
    MatGrowthError,
    NonFiniteError,
    ParseError,
    ResourceCapError,
    SingularInputError,
)
from .fastest import (
    candidate_set_rate,
    jsr_lower_bound,
    jsr_upper_bound,
    max_entry_over_length,
    periodicity_probe,
    verify_alternation_optimality,
)
from .girth import (
    ModMat2,
    bfs_first_collision,
    freeness_sufficient,
    girth_bound,
    reduce_mod,
    suffix_freeness_check,
    verify_relation,
)
from .lyapunov import (
    ave_upper_bound,
    bounds_report,
    lyapunov_mc,
    sturman_thiffeault_bound,
)
from .registry import REGISTRY, PairSpec, resolve_pair
from .report import GrowthReport, emit_report, run_summary

__version__ = "0.1.0"
