"""k-anonymity for multi-perspective event logs via data generalization.

The package takes an event log in which each event carries an activity
plus further perspective attributes (role, location, ...), pads all
traces to a uniform length, and walks a lattice of generalization
levels — control flow first — until every trace is indistinguishable
from at least k-1 others.  Utility metrics quantify what the
generalization cost in terms of control-flow variants and
handover-of-work precision.
"""

from .anonymize import (
    LatticeSearchResult,
    satisfies,
    search,
    search_control_flow,
)
from .errors import (
    ConfigError,
    DataError,
    DuplicateLeaf,
    EmptyLog,
    HierarchyFormatError,
    InconsistentDepth,
    InsufficientTraces,
    IoFailure,
    LinkageBroken,
    MalformedXml,
    MissingColumn,
    MissingConceptName,
    MissingRoot,
    NonFunctionalLevel,
    ParseError,
    PmdgError,
    RaggedRow,
    UnknownAttribute,
    UnknownValue,
)
from .hierarchy import (
    Hierarchy,
    HierarchyTable,
    LevelVector,
    apply_to_log,
    validate_table,
)
from .logio import (
    LogCsvSpec,
    PipelineConfig,
    load_config,
    read_hierarchy,
    read_log_csv,
    read_log_xes,
    write_log_csv,
)
from .metrics import (
    HandoverGraph,
    HandoverPair,
    collect_handover_pairs,
    collect_handover_pairs_by_column,
    export_dot,
    handover_graph,
    handover_precision,
    handover_precision_from_pairs,
    handover_preservation,
    remaining_variants,
    render_dot,
)
from .model import (
    MISSING,
    WILDCARD,
    EquivalenceClass,
    Event,
    EventLog,
    KAnonymityReport,
    Trace,
    control_flow,
    drop_singleton_variants,
    partition,
    trace_signature,
    validate_k,
    variants,
    wildcard_event,
)
from .selection import (
    UtilityProfile,
    level_utility,
    score_hierarchy,
    select,
    syntactic_hierarchy,
)
from .vectorize import (
    AlignmentColumnMap,
    align_pair,
    vectorize_msa,
    vectorize_naive,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentColumnMap",
    "ConfigError",
    "DataError",
    "DuplicateLeaf",
    "EmptyLog",
    "EquivalenceClass",
    "Event",
    "EventLog",
    "HandoverGraph",
    "HandoverPair",
    "Hierarchy",
    "HierarchyFormatError",
    "HierarchyTable",
    "InconsistentDepth",
    "InsufficientTraces",
    "IoFailure",
    "KAnonymityReport",
    "LatticeSearchResult",
    "LevelVector",
    "LinkageBroken",
    "LogCsvSpec",
    "MISSING",
    "MalformedXml",
    "MissingColumn",
    "MissingConceptName",
    "MissingRoot",
    "NonFunctionalLevel",
    "ParseError",
    "PipelineConfig",
    "PmdgError",
    "RaggedRow",
    "Trace",
    "UnknownAttribute",
    "UnknownValue",
    "UtilityProfile",
    "WILDCARD",
    "align_pair",
    "apply_to_log",
    "collect_handover_pairs",
    "collect_handover_pairs_by_column",
    "control_flow",
    "drop_singleton_variants",
    "export_dot",
    "handover_graph",
    "handover_precision",
    "handover_precision_from_pairs",
    "handover_preservation",
    "level_utility",
    "load_config",
    "partition",
    "read_hierarchy",
    "read_log_csv",
    "read_log_xes",
    "remaining_variants",
    "render_dot",
    "satisfies",
    "score_hierarchy",
    "search",
    "search_control_flow",
    "select",
    "syntactic_hierarchy",
    "trace_signature",
    "validate_k",
    "validate_table",
    "variants",
    "vectorize_msa",
    "vectorize_naive",
    "wildcard_event",
    "write_log_csv",
]
