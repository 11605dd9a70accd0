"""Parallel subgraph isomorphism and monomorphism for directed property graphs."""
from .engine import ENGINES, MatchConfig, hipermotif, run_engine, run_oracle, run_vf2ps
from .errors import (
    DuplicateEdge,
    EmptyPattern,
    EndpointOutOfRange,
    HiPerMotifError,
    InstanceTooLarge,
    InvalidParameter,
    InvalidSize,
    NoViableEdge,
    ParseError,
    PatternSelfLoop,
    PatternTooSmall,
    TargetAlreadyUsed,
)
from .graph import (
    AttributeSet,
    PropertyGraph,
    attribute_set,
    build_graph,
    check_edge_attrs,
    check_vertex_attrs,
)
from .matchset import Embedding, MatchSet
from .oracle import brute_force
from .reorder import ReorderResult, sigma_rank, structural_reorder
from .search import SearchState, TreeSearch, extend, feasible, new_state, vf2ps
from .validators import EdgeValidator, edge_validator, vertex_validator
from .verify import verify_embedding

__version__ = "0.1.0"
