"""Exact type computations for boundary points of Reinhardt domains."""

__version__ = "0.1.0"

from .discs import INF, Disc, compose_order, compose_series  # noqa: E402
from .engine import (  # noqa: E402
    InconsistencyError,
    OracleConfig,
    TypeValue,
    line_type,
    newton_order,
    reduce_disc,
    regular_type,
    variety_type,
)
from .exact import ExactComplex, HermSeries, TruncSeries, ZeroUpTo, parse_complex  # noqa: E402
from .geometry import (  # noqa: E402
    BoundaryPoint,
    DomainSpec,
    boundary_point,
    check_axis_monotone,
    check_log_convex,
    check_starlike,
    local_germ_at,
    normalize_coords,
)
from .germ import Germ, parse_expr, parse_germ  # noqa: E402
from .invariants import Multitype, QTypeTuple, multitype, q_types  # noqa: E402
from .oracle import LATTICES, jet_oracle  # noqa: E402

__all__ = [
    "__version__",
    "INF",
    "Disc",
    "compose_order",
    "compose_series",
    "InconsistencyError",
    "OracleConfig",
    "TypeValue",
    "line_type",
    "newton_order",
    "reduce_disc",
    "regular_type",
    "variety_type",
    "ExactComplex",
    "HermSeries",
    "TruncSeries",
    "ZeroUpTo",
    "parse_complex",
    "BoundaryPoint",
    "DomainSpec",
    "boundary_point",
    "check_axis_monotone",
    "check_log_convex",
    "check_starlike",
    "local_germ_at",
    "normalize_coords",
    "Germ",
    "parse_expr",
    "parse_germ",
    "Multitype",
    "QTypeTuple",
    "multitype",
    "q_types",
    "LATTICES",
    "jet_oracle",
]
