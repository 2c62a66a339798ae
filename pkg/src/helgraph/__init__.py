"""helgraph: turn a codebase description into an interactive node-link diagram.

The package is layered: an immutable entity graph with validation and
subtree queries, a canonical interchange format plus a synthetic generator,
a pure glyph rulebook, a two-stage layout (radial tidy tree, then
force-directed refinement with auto-stop), a typed filter engine, and a
session state machine exposed over a local HTTP API, a CLI, and static
export.
"""

from .config import EngineConfig, RelationStyle, load_config
from .errors import (
    GraphValidationError,
    HelgraphError,
    MalformedDocumentError,
    NotATreeSliceError,
    UnknownIdError,
    UnsupportedVersionError,
    Violation,
)
from .filters import (
    ApplyMode,
    Clause,
    FilterMode,
    FilterQuery,
    Operator,
    PropertyId,
    builder_query,
    evaluate_query,
    parse_query,
    serialize_clauses,
)
from .forcelayout import (
    ForceConfig,
    LayoutState,
    apply_user_move,
    force_step,
    run_auto_layout,
)
from .glyphs import (
    ICON_IDS,
    PRESETS,
    ColorPreset,
    Contour,
    Effect,
    GlyphSpec,
    IconStyle,
    Indicator,
    ScalingMode,
    compute_glyph,
    compute_radius,
    resolve_color,
    resolve_icon,
)
from .interchange import (
    load_graph,
    parse_interchange,
    run_extractor,
    save_graph,
    write_interchange,
)
from .model import (
    Accessibility,
    Diagnostic,
    DocComment,
    Entity,
    EntityGraph,
    EntityKind,
    MethodKind,
    Relation,
    RelationName,
    Severity,
    TypeKind,
    build_graph,
    diagnostic_rollup,
    member_counts,
    subtree_height,
    validate,
)
from .export import export_static
from .server import SessionServer, serve
from .session import DiagramSession, InspectPayload, create_session
from .synthetic import SyntheticParams, generate_synthetic
from .tidytree import angular_spans, tidy_tree_layout

__version__ = "0.1.0"

__all__ = [
    "Accessibility",
    "ApplyMode",
    "Clause",
    "ColorPreset",
    "Contour",
    "DiagramSession",
    "Diagnostic",
    "DocComment",
    "Effect",
    "EngineConfig",
    "Entity",
    "EntityGraph",
    "EntityKind",
    "FilterMode",
    "FilterQuery",
    "ForceConfig",
    "GlyphSpec",
    "GraphValidationError",
    "HelgraphError",
    "ICON_IDS",
    "IconStyle",
    "Indicator",
    "InspectPayload",
    "LayoutState",
    "MalformedDocumentError",
    "MethodKind",
    "NotATreeSliceError",
    "Operator",
    "PRESETS",
    "PropertyId",
    "Relation",
    "RelationName",
    "RelationStyle",
    "ScalingMode",
    "SessionServer",
    "Severity",
    "SyntheticParams",
    "TypeKind",
    "UnknownIdError",
    "UnsupportedVersionError",
    "Violation",
    "angular_spans",
    "apply_user_move",
    "build_graph",
    "builder_query",
    "compute_glyph",
    "compute_radius",
    "create_session",
    "diagnostic_rollup",
    "evaluate_query",
    "export_static",
    "force_step",
    "generate_synthetic",
    "load_config",
    "load_graph",
    "member_counts",
    "parse_interchange",
    "parse_query",
    "resolve_color",
    "resolve_icon",
    "run_auto_layout",
    "run_extractor",
    "save_graph",
    "serialize_clauses",
    "serve",
    "subtree_height",
    "tidy_tree_layout",
    "validate",
    "write_interchange",
]
