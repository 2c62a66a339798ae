"""Exploration state machine: expand/collapse/remove/select, presets, layout.

A session owns the mutable view over one immutable graph. Visibility is
always derived: a node shows iff it is not removed and every declares
ancestor is expanded (roots show unless removed). Collapse keeps descendant
expansion flags, so re-expanding restores the previous picture; refresh
clears removals and dimming but preserves expansion.

Position bookkeeping follows the interaction rules: nodes revealed by an
expansion are seeded next to their parent with a deterministic jitter, while
refresh and presets re-seed the whole diagram from the radial tidy tree.
Every operation that changes the diagram triggers exactly one auto-layout
run.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .config import EngineConfig
from .errors import (
    NoChildrenError,
    NotExpandedError,
    NotVisibleError,
    UnknownIdError,
    UnknownPresetError,
)
from .filters import ApplyMode, FilterQuery, evaluate_query, parse_query
from .forcelayout import LayoutState, apply_user_move, run_auto_layout
from .glyphs import GlyphSpec, compute_glyph
from .model import Accessibility, Entity, EntityGraph, EntityKind

PRESET_NAMES = ("default", "allTypes", "projectDependencies", "birdsEye")

_ACCESS_KEYWORDS = {
    Accessibility.PUBLIC: "public",
    Accessibility.INTERNAL: "internal",
    Accessibility.PROTECTED: "protected",
    Accessibility.PROTECTED_INTERNAL: "protected internal",
    Accessibility.PRIVATE_PROTECTED: "private protected",
    Accessibility.PRIVATE: "private",
}

_TOP_LEVEL_KINDS = frozenset(
    {EntityKind.SOLUTION, EntityKind.PROJECT, EntityKind.PACKAGE}
)


def declaration_string(graph: EntityGraph, entity_id: str) -> str:
    """Canonical one-line declaration shown by the inspector."""
    entity = graph.entity(entity_id)
    if entity.kind in _TOP_LEVEL_KINDS:
        return entity.name
    if entity.kind is EntityKind.NAMESPACE:
        return f"namespace {entity.name}"

    parts: list[str] = []
    if entity.accessibility is not None:
        parts.append(_ACCESS_KEYWORDS[entity.accessibility])
    if entity.is_static:
        parts.append("static")
    if entity.is_abstract:
        parts.append("abstract")
    if entity.is_sealed:
        parts.append("sealed")
    if entity.kind is EntityKind.TYPE:
        if entity.is_record:
            parts.append("record")
        assert entity.type_kind is not None
        parts.append(entity.type_kind.value)
    else:
        parts.append(entity.kind.value)
    parts.append(entity.name)

    declaration = " ".join(parts)
    if entity.kind is EntityKind.TYPE:
        bases = [
            graph.entity(target)
            for source, target in graph.relation("inheritsFrom").sorted_edges()
            if source == entity_id
        ]
        if bases:
            base_names = sorted(b.name for b in bases)
            declaration += " : " + ", ".join(base_names)
    return declaration


@dataclass(frozen=True)
class InspectPayload:
    """Everything the side panel needs about one entity."""

    entity: Entity
    declaration: str
    glyph: GlyphSpec
    neighbors: dict[str, dict[str, tuple[str, ...]]]  # relation -> out/in ids

    def to_json(self, graph: EntityGraph) -> dict:
        entity = self.entity

        def brief(node_id: str) -> dict:
            node = graph.entity(node_id)
            return {"id": node.id, "name": node.name, "kind": node.kind.value}

        payload: dict = {
            "id": entity.id,
            "name": entity.name,
            "kind": entity.kind.value,
            "modifiers": {
                "isStatic": entity.is_static,
                "isAbstract": entity.is_abstract,
                "isSealed": entity.is_sealed,
            },
            "declarationString": self.declaration,
            "glyph": self.glyph.to_json(),
            "diagnostics": [
                {"severity": d.severity.value, "code": d.code, "message": d.message}
                for d in entity.diagnostics
            ],
            "relations": {
                name: {
                    "out": [brief(t) for t in sides["out"]],
                    "in": [brief(s) for s in sides["in"]],
                }
                for name, sides in self.neighbors.items()
            },
        }
        if entity.type_kind is not None:
            payload["typeKind"] = entity.type_kind.value
            payload["isRecord"] = entity.is_record
        if entity.method_kind is not None:
            payload["methodKind"] = entity.method_kind.value
        if entity.accessibility is not None:
            payload["accessibility"] = entity.accessibility.value
        if entity.comment is not None:
            payload["comment"] = {
                "summary": entity.comment.summary,
                **(
                    {"remarks": entity.comment.remarks}
                    if entity.comment.remarks
                    else {}
                ),
            }
        return payload


class DiagramSession:
    """Single-writer exploration state over one graph."""

    def __init__(
        self,
        graph: EntityGraph,
        config: Optional[EngineConfig] = None,
        relation_visibility: Optional[dict[str, bool]] = None,
    ):
        self.graph = graph
        self.config = config or EngineConfig()
        self.expanded: set[str] = set()
        self.removed: set[str] = set()
        self.dimmed: set[str] = set()
        self.selection: Optional[str] = None
        self.active_preset = "default"
        self.relation_visibility = self.config.relation_visibility()
        self.layout = LayoutState.from_positions({})
        self.auto_layout_runs = 0
        self.snapshot_listeners: list[Callable[[dict], None]] = []
        self._visible_cache: Optional[frozenset[str]] = None
        self._apply_preset_sets("default")
        if relation_visibility:
            self.relation_visibility.update(relation_visibility)
        self._reseed_layout()

    # ------------------------------------------------------------------
    # Visibility

    def visible_ids(self) -> frozenset[str]:
        """Nodes currently shown, derived from expansion and removal sets."""
        if self._visible_cache is not None:
            return self._visible_cache
        visible: set[str] = set()
        stack = [r for r in self.graph.roots if r not in self.removed]
        visible.update(stack)
        while stack:
            node = stack.pop()
            if node not in self.expanded:
                continue
            for child in self.graph.children(node):
                if child not in self.removed:
                    visible.add(child)
                    stack.append(child)
        self._visible_cache = frozenset(visible)
        return self._visible_cache

    def is_visible(self, entity_id: str) -> bool:
        return entity_id in self.visible_ids()

    def eligible_ids(self) -> frozenset[str]:
        """Filter-eligible nodes: the visible set minus removals."""
        return self.visible_ids() - self.removed

    def _invalidate(self) -> None:
        self._visible_cache = None

    def _enforce_invariants(self) -> None:
        visible = self.visible_ids()
        self.dimmed &= visible
        if self.selection is not None and self.selection not in visible:
            self.selection = None

    # ------------------------------------------------------------------
    # Layout plumbing

    def _visible_edges(self) -> list[tuple[str, str]]:
        visible = self.visible_ids()
        edges: list[tuple[str, str]] = []
        for name, shown in sorted(self.relation_visibility.items()):
            if not shown:
                continue
            for source, target in self.graph.relation(name).sorted_edges():
                if source in visible and target in visible:
                    edges.append((source, target))
        return edges

    def _jitter(self, node_id: str) -> tuple[float, float]:
        crc = zlib.crc32(f"{self.config.force.seed}:{node_id}".encode())
        angle = (crc % 3600) / 3600.0 * 2.0 * math.pi
        radius = self.config.ring_gap / 8.0 + (crc >> 16) % 8
        return radius * math.cos(angle), radius * math.sin(angle)

    def _reseed_layout(self) -> None:
        from .tidytree import tidy_tree_layout

        positions = tidy_tree_layout(
            self.graph, self.visible_ids(), self.config.ring_gap
        )
        self.layout = LayoutState.from_positions(positions)
        self._auto_run()

    def _sync_layout(self) -> None:
        """Carry over known positions; seed newly revealed nodes by parent."""
        visible = self.visible_ids()
        old = self.layout.to_dict()
        positions: dict[str, tuple[float, float]] = {}
        for node_id in sorted(visible):
            if node_id in old:
                positions[node_id] = old[node_id]
        for node_id in sorted(visible):
            if node_id in positions:
                continue
            parent = self.graph.parent(node_id)
            px, py = positions.get(parent, old.get(parent, (0.0, 0.0)))
            jx, jy = self._jitter(node_id)
            positions[node_id] = (px + jx, py + jy)
        pinned = self.layout.pinned & visible
        self.layout = LayoutState.from_positions(positions, pinned=pinned)
        self._auto_run()

    def _auto_run(self) -> None:
        callback = None
        if self.snapshot_listeners:
            def callback(state: LayoutState) -> None:
                snap = self._snapshot_of(state)
                for listener in self.snapshot_listeners:
                    listener(snap)

        self.layout = run_auto_layout(
            self.layout, self._visible_edges(), self.config.force, callback
        )
        self.auto_layout_runs += 1
        if not self.snapshot_listeners:
            return
        final = self.snapshot()
        for listener in self.snapshot_listeners:
            listener(final)

    def _snapshot_of(self, state: LayoutState) -> dict:
        return {
            "positions": {
                node_id: [float(x), float(y)]
                for node_id, (x, y) in zip(state.ids, state.positions)
            },
            "converged": state.converged,
            "iteration": state.iteration,
        }

    def snapshot(self) -> dict:
        return self._snapshot_of(self.layout)

    # ------------------------------------------------------------------
    # Operations

    def expand(self, entity_id: str) -> "DiagramSession":
        if entity_id not in self.graph:
            raise UnknownIdError(entity_id)
        if not self.is_visible(entity_id):
            raise NotVisibleError(f"{entity_id!r} is not visible")
        if not self.graph.children(entity_id):
            raise NoChildrenError(f"{entity_id!r} has no children to show")
        self.expanded.add(entity_id)
        self._invalidate()
        self._enforce_invariants()
        self._sync_layout()
        return self

    def collapse(self, entity_id: str) -> "DiagramSession":
        if entity_id not in self.graph:
            raise UnknownIdError(entity_id)
        if entity_id not in self.expanded:
            raise NotExpandedError(f"{entity_id!r} is not expanded")
        self.expanded.discard(entity_id)
        self._invalidate()
        self._enforce_invariants()
        self._sync_layout()
        return self

    def remove_subtree(self, entity_id: str) -> "DiagramSession":
        if entity_id not in self.graph:
            raise UnknownIdError(entity_id)
        if not self.is_visible(entity_id):
            raise NotVisibleError(f"{entity_id!r} is not visible")
        doomed = {entity_id, *self.graph.descendants(entity_id)}
        self.removed |= doomed
        self._invalidate()
        self._enforce_invariants()
        self._sync_layout()
        return self

    def refresh(self) -> "DiagramSession":
        self.removed.clear()
        self.dimmed.clear()
        self._invalidate()
        self._enforce_invariants()
        self._reseed_layout()
        return self

    def _apply_preset_sets(self, name: str) -> None:
        graph = self.graph
        if name == "default":
            expanded = {
                eid
                for eid, e in graph.entities.items()
                if e.kind is EntityKind.SOLUTION
            }
            visibility = self.config.relation_visibility()
        elif name == "allTypes":
            expanded = {
                eid
                for eid, e in graph.entities.items()
                if e.kind
                in (EntityKind.SOLUTION, EntityKind.PROJECT, EntityKind.NAMESPACE)
            }
            visibility = self.config.relation_visibility()
        elif name == "projectDependencies":
            expanded = {
                eid
                for eid, e in graph.entities.items()
                if e.kind is EntityKind.SOLUTION
            }
            visibility = {key: False for key in self.config.relation_visibility()}
            visibility["dependsOn"] = True
        elif name == "birdsEye":
            expanded = {
                eid
                for eid, e in graph.entities.items()
                if e.kind is not EntityKind.METHOD
            }
            visibility = self.config.relation_visibility()
        else:
            raise UnknownPresetError(f"unknown preset {name!r}")
        self.expanded = expanded
        self.removed.clear()
        self.dimmed.clear()
        self.relation_visibility = visibility
        self.active_preset = name
        self._invalidate()
        self._enforce_invariants()

    def apply_preset(self, name: str) -> "DiagramSession":
        self._apply_preset_sets(name)
        self._reseed_layout()
        return self

    def select(self, entity_id: Optional[str]) -> "DiagramSession":
        if entity_id is not None:
            if entity_id not in self.graph:
                raise UnknownIdError(entity_id)
            if not self.is_visible(entity_id):
                raise NotVisibleError(f"{entity_id!r} is not visible")
        self.selection = entity_id
        return self

    def move_node(
        self, entity_id: str, position: tuple[float, float], pin: bool = False
    ) -> "DiagramSession":
        if entity_id not in self.graph:
            raise UnknownIdError(entity_id)
        if not self.is_visible(entity_id):
            raise NotVisibleError(f"{entity_id!r} is not visible")
        self.layout = apply_user_move(self.layout, entity_id, position, pin)
        self._auto_run()
        return self

    def set_relation_visibility(self, name: str, visible: bool) -> "DiagramSession":
        if name not in self.relation_visibility:
            raise UnknownIdError(name)
        if self.relation_visibility[name] == visible:
            return self
        self.relation_visibility[name] = visible
        self._auto_run()
        return self

    def update_config(self, config: EngineConfig) -> "DiagramSession":
        """Swap the engine configuration, relaying out only when it matters."""
        old = self.config
        self.config = config
        new_visibility = config.relation_visibility()
        visibility_changed = new_visibility != self.relation_visibility
        if visibility_changed:
            self.relation_visibility = new_visibility
        if config.ring_gap != old.ring_gap:
            self._reseed_layout()
        elif visibility_changed or config.force != old.force:
            self._auto_run()
        return self

    # ------------------------------------------------------------------
    # Filtering

    def highlight(self, matched: Iterable[str]) -> "DiagramSession":
        visible = self.visible_ids()
        self.dimmed = set(visible) - set(matched)
        return self

    def isolate(self, matched: Iterable[str]) -> "DiagramSession":
        visible = self.visible_ids()
        kept = set(matched) & visible
        keep_closure = set(kept)
        for node_id in kept:
            keep_closure.update(self.graph.ancestors(node_id))
        doomed_roots = visible - keep_closure
        if not doomed_roots:
            return self
        for root in doomed_roots:
            if root in self.removed:
                continue
            self.removed.add(root)
            self.removed.update(self.graph.descendants(root))
        self._invalidate()
        self._enforce_invariants()
        self._sync_layout()
        return self

    def apply_filter(
        self,
        query: FilterQuery | str,
        mode: ApplyMode | str = ApplyMode.HIGHLIGHT,
        query_mode: str = "fullText",
    ) -> set[str]:
        """Evaluate a query over the eligible nodes and apply the mode."""
        if isinstance(query, str):
            query = parse_query(query_mode, query)
        matched = evaluate_query(self.graph, self.eligible_ids(), query)
        if ApplyMode(mode) is ApplyMode.HIGHLIGHT:
            self.highlight(matched)
        else:
            self.isolate(matched)
        return matched

    # ------------------------------------------------------------------
    # Read models

    def glyph(self, entity_id: str) -> GlyphSpec:
        entity = self.graph.entity(entity_id)
        is_collapsed = (
            entity_id not in self.expanded and bool(self.graph.children(entity_id))
        )
        return compute_glyph(
            entity,
            self.graph,
            preset=self.config.resolve_color_preset(),
            mode=self.config.scaling_mode,
            is_collapsed=is_collapsed,
            constants=self.config.glyph_constants,
        )

    def glyphs(self, ids: Optional[Iterable[str]] = None) -> dict[str, GlyphSpec]:
        targets = sorted(self.visible_ids()) if ids is None else list(ids)
        return {entity_id: self.glyph(entity_id) for entity_id in targets}

    def inspect(self, entity_id: str) -> InspectPayload:
        entity = self.graph.entity(entity_id)
        neighbors: dict[str, dict[str, tuple[str, ...]]] = {}
        for name, relation in sorted(self.graph.relations.items()):
            outgoing = tuple(
                sorted(t for s, t in relation.edges if s == entity_id)
            )
            incoming = tuple(
                sorted(s for s, t in relation.edges if t == entity_id)
            )
            if outgoing or incoming:
                neighbors[name] = {"out": outgoing, "in": incoming}
        return InspectPayload(
            entity=entity,
            declaration=declaration_string(self.graph, entity_id),
            glyph=self.glyph(entity_id),
            neighbors=neighbors,
        )

    def state_summary(self) -> dict:
        return {
            "visible": sorted(self.visible_ids()),
            "expanded": sorted(self.expanded),
            "removed": sorted(self.removed),
            "dimmed": sorted(self.dimmed),
            "selection": self.selection,
            "activePreset": self.active_preset,
            "relationVisibility": dict(sorted(self.relation_visibility.items())),
            "converged": self.layout.converged,
            "iteration": self.layout.iteration,
        }


def create_session(
    graph: EntityGraph,
    config: Optional[EngineConfig] = None,
    relation_visibility: Optional[dict[str, bool]] = None,
) -> DiagramSession:
    """Open a session on the default view (solutions expanded)."""
    return DiagramSession(graph, config, relation_visibility)
