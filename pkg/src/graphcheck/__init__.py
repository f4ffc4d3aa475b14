"""Constant-size one-shot testing of large graph states under IID depolarizing noise."""

from graphcheck.errors import (
    DomainError,
    GraphCheckError,
    InsufficientVertices,
    ParseError,
    SpecInvalid,
    SupportTooLarge,
    TooManyQubits,
    VertexOutOfRange,
)
from graphcheck.graph import (
    UNREACHABLE,
    Graph,
    RhgSpec,
    build_rhg,
    export_graph,
    graph_distance,
    load_graph,
    neighborhood,
    stabilizer_generator,
)
from graphcheck.noise import (
    DepolarizingModel,
    FlipStats,
    error_probability,
    flip_counts,
    lower_bound,
    p_flip_closed,
    p_flip_exact,
    sample_error,
    upper_bound,
)
from graphcheck.pauli import SinglePauli, SparsePauli, anticommutes, anticommutes_single, enumerate_on_support
from graphcheck.protocol import (
    Outcome,
    ProtocolParams,
    TestPlan,
    accept_probability_analytic,
    compute_params,
    run_one_shot,
    select_test_vertices,
    verify_params,
)

__version__ = "0.1.0"
