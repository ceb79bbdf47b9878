"""Strong Menger connectivity of augmented k-ary n-cubes under faults."""

__version__ = "0.1.0"

from .errors import AqError, HypothesisUnmet, InfeasibleRequest
from .topology import (
    AqGraph,
    AqParams,
    EdgeKind,
    common_neighbors,
    cross_common_neighbors,
    decode,
    encode,
    make_graph,
    neighbor_by_kind,
    subcube_vertices,
)
from .faultset import EDGE, VERTEX, FaultSet
from .menger import (
    MengerVerdict,
    PathBundle,
    is_strongly_menger,
    local_connectivity,
    max_edge_disjoint_paths,
    max_vertex_disjoint_paths,
    min_cut,
)
from .components import (
    check_component_premise,
    check_large_component_edge,
    check_large_component_vertex,
    check_wz18_shape,
    components_after_faults,
)
from .faults import (
    WitnessCase,
    build_witness,
    conditional_edge_fault_set,
    enumerate_fault_sets,
    random_fault_set,
)
from .harness import CampaignConfig, CampaignReport, export_graph, replay, run_campaign

__all__ = [
    "AqError", "HypothesisUnmet", "InfeasibleRequest",
    "AqGraph", "AqParams", "EdgeKind", "make_graph", "encode", "decode",
    "neighbor_by_kind", "subcube_vertices", "common_neighbors", "cross_common_neighbors",
    "FaultSet", "VERTEX", "EDGE",
    "PathBundle", "MengerVerdict", "max_vertex_disjoint_paths", "max_edge_disjoint_paths",
    "local_connectivity", "min_cut", "is_strongly_menger",
    "components_after_faults", "check_large_component_vertex", "check_large_component_edge",
    "check_wz18_shape", "check_component_premise",
    "random_fault_set", "conditional_edge_fault_set", "enumerate_fault_sets",
    "WitnessCase", "build_witness",
    "CampaignConfig", "CampaignReport", "run_campaign", "replay", "export_graph",
]
