"""Entity/relation data model with structural validation and subtree queries.

The graph is a snapshot of a codebase: entities (solution, projects,
namespaces, types, members, parameters) plus named edge sets (relations).
``build_graph`` is the only constructor; a constructed ``EntityGraph`` is
immutable and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from . import errors
from .errors import GraphValidationError, NotATypeError, UnknownIdError, Violation


class EntityKind(str, Enum):
    SOLUTION = "solution"
    PROJECT = "project"
    PACKAGE = "package"
    NAMESPACE = "namespace"
    TYPE = "type"
    FIELD = "field"
    METHOD = "method"
    PROPERTY = "property"
    EVENT = "event"
    PARAMETER = "parameter"


#: Member categories that count toward a type's member totals.
MEMBER_KINDS = frozenset(
    {EntityKind.FIELD, EntityKind.METHOD, EntityKind.PROPERTY, EntityKind.EVENT}
)

#: Legal child kinds per parent kind in the declares tree.
DECLARES_CHILD_KINDS: dict[EntityKind, frozenset[EntityKind]] = {
    EntityKind.SOLUTION: frozenset({EntityKind.PROJECT, EntityKind.PACKAGE}),
    EntityKind.PROJECT: frozenset({EntityKind.NAMESPACE}),
    EntityKind.PACKAGE: frozenset(),
    EntityKind.NAMESPACE: frozenset({EntityKind.NAMESPACE, EntityKind.TYPE}),
    EntityKind.TYPE: frozenset({EntityKind.TYPE} | set(MEMBER_KINDS)),
    EntityKind.FIELD: frozenset(),
    EntityKind.METHOD: frozenset({EntityKind.PARAMETER}),
    EntityKind.PROPERTY: frozenset(),
    EntityKind.EVENT: frozenset(),
    EntityKind.PARAMETER: frozenset(),
}

#: Kinds that may carry an accessibility level (types and type members).
ACCESSIBLE_KINDS = frozenset({EntityKind.TYPE} | set(MEMBER_KINDS))


class TypeKind(str, Enum):
    CLASS = "class"
    STRUCT = "struct"
    ENUM = "enum"
    INTERFACE = "interface"
    DELEGATE = "delegate"


#: Type kinds to which the record marker may apply.
RECORDABLE_TYPE_KINDS = frozenset({TypeKind.CLASS, TypeKind.STRUCT})


class MethodKind(str, Enum):
    ORDINARY = "ordinary"
    CONSTRUCTOR = "constructor"
    GETTER = "getter"
    SETTER = "setter"
    OPERATOR = "operator"


class Accessibility(str, Enum):
    PUBLIC = "public"
    INTERNAL = "internal"
    PROTECTED = "protected"
    PROTECTED_INTERNAL = "protectedInternal"
    PRIVATE_PROTECTED = "privateProtected"
    PRIVATE = "private"


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


@dataclass(frozen=True)
class Diagnostic:
    """A compiler diagnostic attached to an entity."""

    severity: Severity
    code: str
    message: str = ""


@dataclass(frozen=True)
class DocComment:
    """Plain-text documentation comment; markup must be flattened upstream."""

    summary: str
    remarks: Optional[str] = None


@dataclass(frozen=True)
class Entity:
    """One node of the codebase graph."""

    id: str
    name: str
    kind: EntityKind
    type_kind: Optional[TypeKind] = None
    is_record: bool = False
    method_kind: Optional[MethodKind] = None
    accessibility: Optional[Accessibility] = None
    is_static: bool = False
    is_abstract: bool = False
    is_sealed: bool = False
    comment: Optional[DocComment] = None
    diagnostics: tuple[Diagnostic, ...] = ()

    def has_diagnostic(self, severity: Severity) -> bool:
        return any(d.severity is severity for d in self.diagnostics)


class RelationName(str, Enum):
    DECLARES = "declares"
    INHERITS_FROM = "inheritsFrom"
    TYPE_OF = "typeOf"
    RETURNS = "returns"
    DEPENDS_ON = "dependsOn"
    REFERENCES = "references"


RELATION_NAMES: tuple[str, ...] = tuple(r.value for r in RelationName)

#: Kinds allowed as endpoints of the dependsOn relation.
DEPENDS_ON_KINDS = frozenset({EntityKind.PROJECT, EntityKind.PACKAGE})


@dataclass(frozen=True)
class Relation:
    """A named set of directed (source, target) edges."""

    name: str
    edges: frozenset[tuple[str, str]] = frozenset()

    @classmethod
    def of(cls, name: str, edges: Iterable[tuple[str, str]]) -> "Relation":
        return cls(name=name, edges=frozenset((s, t) for s, t in edges))

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(self.edges)


def _entity_violations(entity: Entity) -> list[Violation]:
    found: list[Violation] = []
    if entity.is_abstract and entity.is_sealed:
        found.append(
            Violation(
                errors.ILLEGAL_MODIFIER_COMBINATION,
                "abstract and sealed are mutually exclusive",
                entity.id,
            )
        )
    if (entity.type_kind is not None) != (entity.kind is EntityKind.TYPE):
        found.append(
            Violation(
                errors.KIND_MISMATCH,
                f"typeKind must be present iff kind is type (kind={entity.kind.value})",
                entity.id,
            )
        )
    if (entity.method_kind is not None) != (entity.kind is EntityKind.METHOD):
        found.append(
            Violation(
                errors.KIND_MISMATCH,
                f"methodKind must be present iff kind is method (kind={entity.kind.value})",
                entity.id,
            )
        )
    if entity.is_record and (
        entity.type_kind is None or entity.type_kind not in RECORDABLE_TYPE_KINDS
    ):
        found.append(
            Violation(
                errors.KIND_MISMATCH,
                "isRecord applies only to class and struct types",
                entity.id,
            )
        )
    if entity.accessibility is not None and entity.kind not in ACCESSIBLE_KINDS:
        found.append(
            Violation(
                errors.KIND_MISMATCH,
                f"accessibility is not defined for kind {entity.kind.value}",
                entity.id,
            )
        )
    for diag in entity.diagnostics:
        if not isinstance(diag.severity, Severity):
            found.append(
                Violation(errors.INVALID_DIAGNOSTIC, "bad severity", entity.id)
            )
        if not diag.code:
            found.append(
                Violation(
                    errors.INVALID_DIAGNOSTIC, "diagnostic code is empty", entity.id
                )
            )
    return found


def _cycle_violations(
    relation: str,
    edges: Iterable[tuple[str, str]],
    code: str,
) -> list[Violation]:
    """Detect a cycle among directed edges; reports one representative."""
    adjacency: dict[str, list[str]] = {}
    for source, target in edges:
        adjacency.setdefault(source, []).append(target)
    state: dict[str, int] = {}  # 1 = on stack, 2 = done

    for start in sorted(adjacency):
        if state.get(start):
            continue
        stack: list[tuple[str, int]] = [(start, 0)]
        state[start] = 1
        path = [start]
        while stack:
            node, child_index = stack[-1]
            children = sorted(adjacency.get(node, ()))
            if child_index < len(children):
                stack[-1] = (node, child_index + 1)
                nxt = children[child_index]
                if state.get(nxt) == 1:
                    cycle = path[path.index(nxt):] + [nxt]
                    return [
                        Violation(
                            code,
                            f"cycle in {relation}: {' -> '.join(cycle)}",
                            nxt,
                            tuple(cycle),
                        )
                    ]
                if not state.get(nxt):
                    state[nxt] = 1
                    stack.append((nxt, 0))
                    path.append(nxt)
            else:
                state[node] = 2
                stack.pop()
                path.pop()
    return []


def validate(
    entities: "Sequence[Entity] | EntityGraph",
    relations: Optional[Sequence[Relation]] = None,
) -> list[Violation]:
    """Check every structural invariant; returns all violations found.

    Accepts either raw ``(entities, relations)`` or an already-built graph
    (which re-checks, mostly useful for documents of unknown provenance).
    Violations are data, not failures: an empty list means the input is valid.
    """
    if isinstance(entities, EntityGraph):
        graph = entities
        entity_list: Sequence[Entity] = list(graph.entities.values())
        relation_list: Sequence[Relation] = list(graph.relations.values())
    else:
        entity_list = entities
        relation_list = relations if relations is not None else []

    found: list[Violation] = []

    by_id: dict[str, Entity] = {}
    for entity in entity_list:
        if entity.id in by_id:
            found.append(
                Violation(errors.DUPLICATE_ID, "duplicate entity id", entity.id)
            )
            continue
        by_id[entity.id] = entity
        found.extend(_entity_violations(entity))

    seen_relations: set[str] = set()
    declares_edges: list[tuple[str, str]] = []
    for relation in relation_list:
        if relation.name not in RELATION_NAMES:
            found.append(
                Violation(
                    errors.UNKNOWN_RELATION,
                    f"unknown relation name {relation.name!r}",
                    relation.name,
                )
            )
            continue
        if relation.name in seen_relations:
            found.append(
                Violation(
                    errors.DUPLICATE_ID,
                    f"relation {relation.name!r} given more than once",
                    relation.name,
                )
            )
            continue
        seen_relations.add(relation.name)
        for source, target in relation.sorted_edges():
            edge_label = f"{relation.name}:{source}->{target}"
            missing = [x for x in (source, target) if x not in by_id]
            if missing:
                found.append(
                    Violation(
                        errors.DANGLING_EDGE,
                        f"edge endpoint(s) {missing} not in entity set",
                        edge_label,
                    )
                )
                continue
            if relation.name == RelationName.DECLARES.value:
                declares_edges.append((source, target))
                parent_kind = by_id[source].kind
                child_kind = by_id[target].kind
                if child_kind not in DECLARES_CHILD_KINDS[parent_kind]:
                    found.append(
                        Violation(
                            errors.KIND_MISMATCH,
                            f"{parent_kind.value} cannot declare {child_kind.value}",
                            edge_label,
                        )
                    )
            elif relation.name == RelationName.DEPENDS_ON.value:
                for endpoint in (source, target):
                    if by_id[endpoint].kind not in DEPENDS_ON_KINDS:
                        found.append(
                            Violation(
                                errors.KIND_MISMATCH,
                                "dependsOn endpoints must be projects or packages",
                                edge_label,
                            )
                        )

    relations_by_name = {r.name: r for r in relation_list if r.name in seen_relations}

    parents: dict[str, list[str]] = {}
    for source, target in declares_edges:
        parents.setdefault(target, []).append(source)
    for child_id in sorted(parents):
        if len(parents[child_id]) > 1:
            found.append(
                Violation(
                    errors.MULTIPLE_PARENTS,
                    f"{len(parents[child_id])} declares parents: "
                    f"{sorted(parents[child_id])}",
                    child_id,
                )
            )
    for entity in entity_list:
        if entity.kind is not EntityKind.SOLUTION and entity.id in by_id:
            if by_id[entity.id] is entity and entity.id not in parents:
                found.append(
                    Violation(
                        errors.NON_SOLUTION_ROOT,
                        f"non-solution {entity.kind.value} has no declares parent",
                        entity.id,
                    )
                )

    found.extend(
        _cycle_violations("declares", declares_edges, errors.DECLARES_CYCLE)
    )
    depends = relations_by_name.get(RelationName.DEPENDS_ON.value)
    if depends is not None:
        valid_edges = [
            (s, t) for s, t in depends.sorted_edges() if s in by_id and t in by_id
        ]
        found.extend(
            _cycle_violations("dependsOn", valid_edges, errors.DEPENDS_ON_CYCLE)
        )
    return found


@dataclass(frozen=True)
class GraphMetadata:
    label: str = ""
    format_version: str = "1.0"


class EntityGraph:
    """Validated, immutable collection of entities and relations.

    Construct through :func:`build_graph`. Child lists are kept sorted by id
    so traversal order (and everything derived from it) is deterministic.
    """

    def __init__(
        self,
        entities: Mapping[str, Entity],
        relations: Mapping[str, Relation],
        metadata: GraphMetadata,
        _token: object = None,
    ):
        if _token is not _BUILD_TOKEN:
            raise TypeError("use build_graph() to construct an EntityGraph")
        self._entities = dict(entities)
        self._relations = dict(relations)
        self._metadata = metadata

        children: dict[str, list[str]] = {eid: [] for eid in self._entities}
        parent: dict[str, str] = {}
        declares = self._relations.get(RelationName.DECLARES.value)
        if declares is not None:
            for source, target in declares.sorted_edges():
                children[source].append(target)
                parent[target] = source
        self._children = {eid: tuple(sorted(kids)) for eid, kids in children.items()}
        self._parent = parent
        self._roots = tuple(
            sorted(eid for eid in self._entities if eid not in parent)
        )

    @property
    def entities(self) -> Mapping[str, Entity]:
        return self._entities

    @property
    def relations(self) -> Mapping[str, Relation]:
        return self._relations

    @property
    def metadata(self) -> GraphMetadata:
        return self._metadata

    @property
    def roots(self) -> tuple[str, ...]:
        """Declares roots, sorted by id."""
        return self._roots

    def __len__(self) -> int:
        return len(self._entities)

    def __contains__(self, entity_id: str) -> bool:
        return entity_id in self._entities

    def entity(self, entity_id: str) -> Entity:
        try:
            return self._entities[entity_id]
        except KeyError:
            raise UnknownIdError(entity_id) from None

    def relation(self, name: str) -> Relation:
        return self._relations.get(name, Relation(name=name))

    def children(self, entity_id: str) -> tuple[str, ...]:
        if entity_id not in self._entities:
            raise UnknownIdError(entity_id)
        return self._children[entity_id]

    def parent(self, entity_id: str) -> Optional[str]:
        if entity_id not in self._entities:
            raise UnknownIdError(entity_id)
        return self._parent.get(entity_id)

    def ancestors(self, entity_id: str) -> tuple[str, ...]:
        """Strict declares-ancestors, nearest first."""
        chain = []
        current = self.parent(entity_id)
        while current is not None:
            chain.append(current)
            current = self._parent.get(current)
        return tuple(chain)

    def descendants(self, entity_id: str) -> tuple[str, ...]:
        """Strict declares-descendants in depth-first order."""
        if entity_id not in self._entities:
            raise UnknownIdError(entity_id)
        out: list[str] = []
        stack = list(reversed(self._children[entity_id]))
        while stack:
            node = stack.pop()
            out.append(node)
            stack.extend(reversed(self._children[node]))
        return tuple(out)

    @cached_property
    def _heights(self) -> dict[str, int]:
        heights: dict[str, int] = {}
        for root in self._roots:
            stack: list[tuple[str, bool]] = [(root, False)]
            while stack:
                node, expanded = stack.pop()
                kids = self._children[node]
                if not kids:
                    heights[node] = 0
                elif expanded:
                    heights[node] = 1 + max(heights[k] for k in kids)
                else:
                    stack.append((node, True))
                    stack.extend((k, False) for k in kids)
        return heights

    @cached_property
    def _rollups(self) -> dict[str, tuple[bool, bool]]:
        """Per node: (error in strict subtree, warning in strict subtree)."""
        rollups: dict[str, tuple[bool, bool]] = {}
        for root in self._roots:
            stack: list[tuple[str, bool]] = [(root, False)]
            while stack:
                node, expanded = stack.pop()
                kids = self._children[node]
                if not kids:
                    rollups[node] = (False, False)
                elif expanded:
                    err = False
                    warn = False
                    for kid in kids:
                        entity = self._entities[kid]
                        sub_err, sub_warn = rollups[kid]
                        err = err or sub_err or entity.has_diagnostic(Severity.ERROR)
                        warn = (
                            warn or sub_warn or entity.has_diagnostic(Severity.WARNING)
                        )
                    rollups[node] = (err, warn)
                else:
                    stack.append((node, True))
                    stack.extend((k, False) for k in kids)
        return rollups


_BUILD_TOKEN = object()


def build_graph(
    entities: Iterable[Entity],
    relations: Iterable[Relation] = (),
    label: str = "",
) -> EntityGraph:
    """Validate and assemble a graph; raises on the first violated invariant."""
    entity_list = list(entities)
    relation_list = list(relations)
    violations = validate(entity_list, relation_list)
    if violations:
        raise GraphValidationError(violations[0])
    return EntityGraph(
        entities={e.id: e for e in entity_list},
        relations={r.name: r for r in relation_list},
        metadata=GraphMetadata(label=label),
        _token=_BUILD_TOKEN,
    )


def subtree_height(graph: EntityGraph, entity_id: str) -> int:
    """Height of the declares subtree below ``entity_id`` (0 for leaves)."""
    if entity_id not in graph:
        raise UnknownIdError(entity_id)
    return graph._heights[entity_id]


def member_counts(graph: EntityGraph, type_id: str) -> tuple[int, int]:
    """(static, instance) counts of direct member children of a type.

    Only the four member categories count; nested types and anything else
    are excluded.
    """
    entity = graph.entity(type_id)
    if entity.kind is not EntityKind.TYPE:
        raise NotATypeError(f"{type_id!r} is a {entity.kind.value}, not a type")
    static_count = 0
    instance_count = 0
    for child_id in graph.children(type_id):
        child = graph.entity(child_id)
        if child.kind in MEMBER_KINDS:
            if child.is_static:
                static_count += 1
            else:
                instance_count += 1
    return static_count, instance_count


def diagnostic_rollup(graph: EntityGraph, entity_id: str) -> tuple[bool, bool]:
    """(error, warning) presence among strict declares-descendants.

    The node's own diagnostics are deliberately excluded: they surface as
    effects on the node itself, while the rollup feeds subtree indicators.
    """
    if entity_id not in graph:
        raise UnknownIdError(entity_id)
    return graph._rollups[entity_id]
