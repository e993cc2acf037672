"""Sumset arithmetic and exhaustive checks for additively left-stable sets."""

from .census import (
    CensusResult,
    census,
    enumerate_left_stable,
    sharpness_census,
    verify_remark_sets,
)
from .continuum import (
    IntervalUnion,
    construct_extremal_cont,
    critical_envelope_check,
    diam,
    envelope_check,
    h_cont,
    intersect_window,
    is_left_stable_cont,
    lemma_cont_bound,
    measure,
    minkowski_sum,
    ruzsa_check,
)
from .errors import (
    CapacityError,
    EmptySetError,
    InconsistencyError,
    LiteralSyntaxError,
    PreconditionError,
    StabError,
)
from .freiman import (
    Category,
    classify,
    decompose_critical,
    freiman_3k4_pair_check,
    grynkiewicz_check,
    grynkiewicz_params,
)
from .intset import (
    IntSet,
    SetStats,
    format_set_literal,
    k_fold_sum,
    normalize,
    parse_set_literal,
    prefix,
    prefix_count,
    stats,
    sumset,
)
from .report import Report, parse_report
from .stability import (
    construct_extremal_disc,
    h_disc,
    h_disc_monotone_scan,
    is_left_stable,
    lemma_disc_bound,
)

__version__ = "0.1.0"
