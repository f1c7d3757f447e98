"""Planar covers of graphs and the embeddings they induce on their bases."""
from __future__ import annotations

from .covering import (
    BRANCHED,
    INVALID,
    UNBRANCHED,
    WEAK,
    CoverClass,
    CoverMap,
    DeckGroup,
    build_cover,
    classify,
    compose,
    deck_group,
    enumerate_double_covers,
    enumerate_permutation_covers,
    identity_cover,
    is_regular,
    voltage_cover,
    z2_voltage_cover,
)
from .errors import (
    BudgetExceeded,
    CoverError,
    GraphError,
    InternalConsistencyError,
    NegamiError,
    PreconditionError,
)
from .graph_core import (
    EmbeddingScheme,
    Graph,
    SurfaceId,
    automorphisms,
    build_graph,
    enumerate_rotation_systems,
    euler_characteristic,
    faces,
    flip_vertex,
    is_orientable,
    is_planar,
    make_scheme,
    planar_embed,
    surface_id,
    validate_assumptions,
)
from .lifting import (
    Case1,
    Case2,
    OrientationDoubleCover,
    factor_through_universal,
    necessity_pipeline,
    orientation_double_cover,
)
from .negami_props import (
    P2,
    S2,
    InducedOrder,
    QuotientReport,
    SignAssignment,
    assign_signs,
    check_pev,
    check_pev_any_embedding,
    check_property_e,
    check_property_v,
    equivariant_embedding_search,
    quotient_embedding,
    search_property_e,
    surface_from_signs,
)

__version__ = "0.1.0"
