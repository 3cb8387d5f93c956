"""Dynamic-network laboratory.

Worst-case dynamic graph schedules, exact causal-influence metrics, a
cover-time communication model, synchronous counting protocols, and a
conjecture explorer, with a CLI (``dynnetlab``) tying them together.
"""

from .dynamic_graph import (
    DynamicGraph,
    PeriodResult,
    ScheduleParseError,
    ScheduleRangeError,
    edge_period,
    interval_compress,
    is_connected,
    is_interval_connected,
    load_dynamic_graph,
    save_dynamic_graph,
)
from .generators import (
    SamplerBudgetError,
    alternating_matchings_ring,
    from_static,
    oit_iit_gap_graph,
    random_oit1_graph,
    soifer,
    soifer_neighbor,
    split_halves_graph,
)
from .influence import (
    MetricResult,
    ReachRecord,
    compute_ct,
    compute_iit,
    compute_moi,
    compute_oit,
    dynamic_diameter,
    future_set,
    metrics_summary,
    past_set,
)
from .local_windows import (
    CoverNetwork,
    ModelViolationError,
    WeightedDiameter,
    admits_worst_case,
    fsum,
    load_network,
    path_delay,
    periodic_respecting_schedule,
    psum,
    respects,
    save_network,
    weighted_dynamic_diameter,
)
from .protocols import (
    ConsistencyProtocol,
    CoverCountProtocol,
    CtCountProtocol,
    OitCountProtocol,
    ProtocolIntegrityError,
    ProtocolPreconditionError,
    Trace,
    run_sync,
)
from .explorer import (
    ConjectureVerdict,
    PropertyReport,
    SearchBudget,
    check_conjecture1,
    property_suite,
    search_counterexample,
)

__all__ = [
    "DynamicGraph",
    "PeriodResult",
    "ScheduleParseError",
    "ScheduleRangeError",
    "edge_period",
    "interval_compress",
    "is_connected",
    "is_interval_connected",
    "load_dynamic_graph",
    "save_dynamic_graph",
    "SamplerBudgetError",
    "alternating_matchings_ring",
    "from_static",
    "oit_iit_gap_graph",
    "random_oit1_graph",
    "soifer",
    "soifer_neighbor",
    "split_halves_graph",
    "MetricResult",
    "ReachRecord",
    "compute_ct",
    "compute_iit",
    "compute_moi",
    "compute_oit",
    "dynamic_diameter",
    "future_set",
    "metrics_summary",
    "past_set",
    "CoverNetwork",
    "ModelViolationError",
    "WeightedDiameter",
    "admits_worst_case",
    "fsum",
    "load_network",
    "path_delay",
    "periodic_respecting_schedule",
    "psum",
    "respects",
    "save_network",
    "weighted_dynamic_diameter",
    "ConsistencyProtocol",
    "CoverCountProtocol",
    "CtCountProtocol",
    "OitCountProtocol",
    "ProtocolIntegrityError",
    "ProtocolPreconditionError",
    "Trace",
    "run_sync",
    "ConjectureVerdict",
    "PropertyReport",
    "SearchBudget",
    "check_conjecture1",
    "property_suite",
    "search_counterexample",
]

__version__ = "0.1.0"
