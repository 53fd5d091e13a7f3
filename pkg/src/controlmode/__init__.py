"""Structural controllability analysis and distributed-to-centralized rewiring."""

from .classification import (
    AlternatingComponent,
    ComponentKind,
    ControlClassification,
    ControlReport,
    Label,
    Mode,
    Side,
    alternating_components,
    alternating_reach,
    classify_nodes,
    control_report,
    largest_input_component,
)
from .generation import GeneratorConfig, Model, scale_free_digraph, uniform_random_digraph
from .graph import (
    DirectedGraph,
    EdgeOp,
    EdgeOpKind,
    apply_edge_op,
    average_degree,
    parse_edge_list,
    read_edge_list,
    serialize_edge_list,
)
from .matching import Matching, extract_unmatched, maximum_matching, verify_maximum_matching
from .oracle import enumerate_maximum_matchings, oracle_classification
from .rewiring import (
    Case,
    RewireOutcome,
    alter_to_centralized,
    classify_reversal_case,
    detach_driver,
    rewire_metrics,
    skip_add_condition,
)
from .sweep import SweepConfig, run_experiment_sweep

__version__ = "0.1.0"
