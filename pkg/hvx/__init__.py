"""
hvx - exact hypervolume indicator, contributions and subset selection
"""

from .errors import (
    BudgetExceededError,
    DimensionMismatchError,
    EmptyFrontError,
    HvxError,
    InvalidPointError,
    MembershipError,
    NondominanceError,
    PolicyViolationError,
)
from .geometry import (
    ClipPolicy,
    DelimiterSet,
    Front,
    NondominanceFlag,
    bound_and_filter,
    dominance_matrix,
    join,
    make_front,
    make_point,
    nondominated_filter,
    project_drop_last,
    strictly_dominates,
    strongly_dominates,
    validate_front,
    weakly_dominates,
)
from .hypervolume import (
    Algorithm,
    HvResult,
    LocalUpperBoundSet,
    UpdateMode,
    hv,
    hv_2d,
    hv_3d,
    hv_4d,
    hv_wfg,
    in_search_region,
    local_upper_bounds,
    update_hv,
)
from .contributions import (
    ContributionTable,
    TwoSetContributionState,
    all_contributions,
    all_contributions_2d,
    all_contributions_3d,
    exclusive_boxes,
    joint_contribution,
    least_contributor,
    one_contribution,
    set_contribution,
    strong_delimiters,
    update_all_contributions,
    update_all_contributions_2set,
)
from .subset import (
    ApproximationReport,
    HsspMethod,
    HsspSolution,
    approximation_report,
    complement_loss,
    hssp,
    hssp_exact_2d,
    hssp_exhaustive,
    hssp_greedy_decremental,
    hssp_greedy_incremental,
    hssp_gsemo,
    hssp_local_search,
    tighter_greedy_bound,
)
from .oracles import (
    ORACLE_VERSION,
    McEstimate,
    contribution_oracle,
    hv_grid,
    hv_hso,
    hv_inclusion_exclusion,
    hv_monte_carlo,
)
from .trace import SolverTrace, TraceStep

__all__ = [
    "Algorithm", "ApproximationReport", "BudgetExceededError", "ClipPolicy", "ContributionTable",
    "DelimiterSet", "DimensionMismatchError", "EmptyFrontError", "Front", "HsspMethod", "HsspSolution",
    "HvResult", "HvxError", "InvalidPointError", "LocalUpperBoundSet", "McEstimate", "MembershipError",
    "NondominanceError", "NondominanceFlag", "ORACLE_VERSION", "PolicyViolationError", "SolverTrace",
    "TraceStep", "TwoSetContributionState", "UpdateMode",
    "all_contributions", "all_contributions_2d", "all_contributions_3d", "approximation_report",
    "bound_and_filter", "complement_loss", "contribution_oracle", "dominance_matrix", "exclusive_boxes",
    "hssp", "hssp_exact_2d", "hssp_exhaustive", "hssp_greedy_decremental", "hssp_greedy_incremental",
    "hssp_gsemo", "hssp_local_search", "hv", "hv_2d", "hv_3d", "hv_4d", "hv_grid", "hv_hso",
    "hv_inclusion_exclusion", "hv_monte_carlo", "hv_wfg", "in_search_region", "join",
    "joint_contribution", "least_contributor", "local_upper_bounds", "make_front", "make_point",
    "nondominated_filter", "one_contribution", "project_drop_last", "set_contribution",
    "strictly_dominates", "strong_delimiters", "strongly_dominates", "tighter_greedy_bound",
    "update_all_contributions", "update_all_contributions_2set", "update_hv", "validate_front",
    "weakly_dominates",
]
__version__ = "0.1.0"
