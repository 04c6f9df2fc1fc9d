"""Recognition and ordered decomposition of planar median graphs."""

from __future__ import annotations

from ._accel import BACKEND
from .decompose import (
    Factor,
    Factorization,
    FactorizationError,
    GlueMap,
    InvalidOrder,
    NotMedian,
    Recognition,
    decompose,
    glue,
    merge_factorizations,
    recognize,
    recompose,
)
from .embedding import Embedding, EmbeddingError, NotPlanar, planar_embed, side_map, split_at_square
from .generate import QSInstance, generate_qs, generate_to_size
from .graph import DistanceOracle, Graph, GraphError, distances, from_edge_list, interval
from .io import parse_edge_list, read_edge_list, write_edge_list
from .metric import (
    MedianVerdict,
    Violation,
    Witness,
    convex_hull,
    is_convex,
    is_cube_free_median_planar,
    is_median_oracle,
    is_median_planar,
    isometric_cycles,
)
from .nesting import NestingForest, StraddleError, nesting_forest, square_order
from .squares import BasicKind, Square, enumerate_squares, is_basic_qs, is_square_graph

__all__ = [
    "BACKEND",
    "BasicKind",
    "DistanceOracle",
    "Embedding",
    "EmbeddingError",
    "Factor",
    "Factorization",
    "FactorizationError",
    "GlueMap",
    "Graph",
    "GraphError",
    "InvalidOrder",
    "MedianVerdict",
    "NestingForest",
    "NotMedian",
    "NotPlanar",
    "QSInstance",
    "Recognition",
    "Square",
    "StraddleError",
    "Violation",
    "Witness",
    "convex_hull",
    "decompose",
    "distances",
    "enumerate_squares",
    "from_edge_list",
    "generate_qs",
    "generate_to_size",
    "glue",
    "interval",
    "is_basic_qs",
    "is_convex",
    "is_cube_free_median_planar",
    "is_median_oracle",
    "is_median_planar",
    "is_square_graph",
    "isometric_cycles",
    "merge_factorizations",
    "nesting_forest",
    "parse_edge_list",
    "planar_embed",
    "read_edge_list",
    "recognize",
    "recompose",
    "side_map",
    "split_at_square",
    "square_order",
    "write_edge_list",
]
