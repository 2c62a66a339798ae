"""Deterministic generator of codebase-shaped graphs for tests and demos."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .model import (
    Accessibility,
    Diagnostic,
    DocComment,
    Entity,
    EntityGraph,
    EntityKind,
    MethodKind,
    Relation,
    Severity,
    TypeKind,
    build_graph,
)

_AREAS = [
    "Media", "Archive", "Search", "Import", "Catalog", "Session", "Account",
    "Playback", "Metadata", "Storage", "Review", "Permission", "Upload",
    "Billing", "Report", "Notify",
]
_ROLES = [
    "Service", "Manager", "Provider", "Controller", "Repository", "Builder",
    "Handler", "Factory", "Cache", "Client", "Store", "Resolver", "Validator",
    "Mapper", "Queue", "Engine",
]
_NAMESPACE_WORDS = [
    "Core", "Data", "Web", "Api", "Models", "Services", "Utils", "Domain",
    "Common", "Infrastructure", "Pipeline", "Contracts",
]
_VERBS = [
    "Get", "Set", "Find", "Create", "Delete", "Update", "List", "Resolve",
    "Load", "Save", "Open", "Close", "Build", "Parse", "Sync", "Merge",
]
_COMMENT_SNIPPETS = [
    "Coordinates access to", "Caches results from", "Validates input for",
    "Bridges the gap between", "Owns the lifecycle of", "Serializes state for",
    "Schedules background work for", "Tracks changes to",
]


@dataclass(frozen=True)
class SyntheticParams:
    """Knobs for the generator; every field participates in determinism."""

    seed: int = 0
    project_count: int = 8
    namespace_depth: int = 2
    types_per_namespace: int = 3
    members_per_type: int = 4
    diagnostic_rate: float = 0.05

    def __post_init__(self):
        for name in (
            "project_count",
            "namespace_depth",
            "types_per_namespace",
            "members_per_type",
        ):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if not 0.0 <= self.diagnostic_rate <= 1.0:
            raise ValueError("diagnostic_rate must be within [0, 1]")


class _Builder:
    def __init__(self, rng: random.Random, params: SyntheticParams):
        self.rng = rng
        self.params = params
        self.entities: list[Entity] = []
        self.declares: list[tuple[str, str]] = []
        self.inherits: list[tuple[str, str]] = []
        self.type_of: list[tuple[str, str]] = []
        self.returns: list[tuple[str, str]] = []
        self.depends: list[tuple[str, str]] = []
        self.type_ids: list[str] = []
        self._used_ids: set[str] = set()

    def fresh_id(self, parent: str | None, name: str) -> str:
        base = name if parent is None else f"{parent}/{name}"
        candidate = base
        counter = 2
        while candidate in self._used_ids:
            candidate = f"{base}#{counter}"
            counter += 1
        self._used_ids.add(candidate)
        return candidate

    def add(self, entity: Entity, parent: str | None) -> Entity:
        self.entities.append(entity)
        if parent is not None:
            self.declares.append((parent, entity.id))
        return entity

    def maybe_diagnostics(self) -> tuple[Diagnostic, ...]:
        if self.rng.random() >= self.params.diagnostic_rate:
            return ()
        roll = self.rng.random()
        if roll < 0.3:
            severity, code = Severity.ERROR, f"HG{self.rng.randrange(100, 400):04d}"
        elif roll < 0.9:
            severity, code = Severity.WARNING, f"HG{self.rng.randrange(400, 800):04d}"
        else:
            severity, code = Severity.INFO, f"HG{self.rng.randrange(800, 999):04d}"
        return (Diagnostic(severity, code, "synthetic diagnostic"),)

    def maybe_comment(self, subject: str) -> DocComment | None:
        if self.rng.random() >= 0.4:
            return None
        summary = f"{self.rng.choice(_COMMENT_SNIPPETS)} {subject}."
        remarks = None
        if self.rng.random() < 0.25:
            remarks = f"Generated for seed {self.params.seed}."
        return DocComment(summary=summary, remarks=remarks)

    def accessibility(self) -> Accessibility:
        roll = self.rng.random()
        if roll < 0.55:
            return Accessibility.PUBLIC
        if roll < 0.75:
            return Accessibility.INTERNAL
        if roll < 0.87:
            return Accessibility.PRIVATE
        return self.rng.choice(
            [
                Accessibility.PROTECTED,
                Accessibility.PROTECTED_INTERNAL,
                Accessibility.PRIVATE_PROTECTED,
            ]
        )


def _add_members(builder: _Builder, type_entity: Entity) -> None:
    rng = builder.rng
    count = builder.params.members_per_type
    if type_entity.type_kind is TypeKind.DELEGATE:
        return
    for m in range(count):
        name = f"{rng.choice(_VERBS)}{rng.choice(_AREAS)}"
        if type_entity.type_kind is TypeKind.ENUM:
            kind, method_kind = EntityKind.FIELD, None
            is_static = True
        else:
            kind = rng.choice(
                [
                    EntityKind.METHOD,
                    EntityKind.METHOD,
                    EntityKind.PROPERTY,
                    EntityKind.FIELD,
                    EntityKind.EVENT,
                ]
            )
            method_kind = None
            if kind is EntityKind.METHOD:
                method_kind = rng.choice(
                    [
                        MethodKind.ORDINARY,
                        MethodKind.ORDINARY,
                        MethodKind.ORDINARY,
                        MethodKind.CONSTRUCTOR,
                        MethodKind.GETTER,
                        MethodKind.SETTER,
                        MethodKind.OPERATOR,
                    ]
                )
            is_static = type_entity.is_static or rng.random() < 0.25
        member = Entity(
            id=builder.fresh_id(type_entity.id, name),
            name=name,
            kind=kind,
            method_kind=method_kind,
            accessibility=builder.accessibility(),
            is_static=is_static,
            comment=builder.maybe_comment(f"member {name}"),
            diagnostics=builder.maybe_diagnostics(),
        )
        builder.add(member, type_entity.id)
        if kind is EntityKind.METHOD:
            builder.returns.append((member.id, "?"))  # target patched later
            for p in range(rng.randrange(0, 3)):
                param_name = rng.choice(_AREAS).lower()
                param = Entity(
                    id=builder.fresh_id(member.id, param_name),
                    name=param_name,
                    kind=EntityKind.PARAMETER,
                )
                builder.add(param, member.id)
                if rng.random() < 0.5:
                    builder.type_of.append((param.id, "?"))
        elif kind in (EntityKind.FIELD, EntityKind.PROPERTY):
            if rng.random() < 0.5:
                builder.type_of.append((member.id, "?"))


def _add_type(builder: _Builder, namespace_id: str) -> None:
    rng = builder.rng
    roll = rng.random()
    if roll < 0.55:
        type_kind = TypeKind.CLASS
    elif roll < 0.70:
        type_kind = TypeKind.STRUCT
    elif roll < 0.80:
        type_kind = TypeKind.ENUM
    elif roll < 0.95:
        type_kind = TypeKind.INTERFACE
    else:
        type_kind = TypeKind.DELEGATE
    name = f"{rng.choice(_AREAS)}{rng.choice(_ROLES)}"
    if type_kind is TypeKind.INTERFACE:
        name = "I" + name
    is_static = type_kind is TypeKind.CLASS and rng.random() < 0.15
    is_abstract = is_sealed = False
    if type_kind is TypeKind.CLASS and not is_static:
        if rng.random() < 0.15:
            is_abstract = True
        elif rng.random() < 0.25:
            is_sealed = True
    is_record = (
        type_kind in (TypeKind.CLASS, TypeKind.STRUCT)
        and not is_static
        and rng.random() < 0.15
    )
    type_entity = Entity(
        id=builder.fresh_id(namespace_id, name),
        name=name,
        kind=EntityKind.TYPE,
        type_kind=type_kind,
        is_record=is_record,
        accessibility=builder.accessibility(),
        is_static=is_static,
        is_abstract=is_abstract,
        is_sealed=is_sealed,
        comment=builder.maybe_comment(f"the {name} type"),
        diagnostics=builder.maybe_diagnostics(),
    )
    builder.add(type_entity, namespace_id)
    if (
        builder.type_ids
        and type_kind in (TypeKind.CLASS, TypeKind.INTERFACE)
        and not is_static
        and rng.random() < 0.3
    ):
        builder.inherits.append((type_entity.id, rng.choice(builder.type_ids)))
    builder.type_ids.append(type_entity.id)
    _add_members(builder, type_entity)


def _add_namespaces(builder: _Builder, project_id: str) -> None:
    rng = builder.rng
    parent = project_id
    for depth in range(builder.params.namespace_depth):
        name = rng.choice(_NAMESPACE_WORDS)
        namespace = Entity(
            id=builder.fresh_id(parent, name),
            name=name,
            kind=EntityKind.NAMESPACE,
            comment=builder.maybe_comment(f"the {name} namespace"),
            diagnostics=builder.maybe_diagnostics(),
        )
        builder.add(namespace, parent)
        for _ in range(builder.params.types_per_namespace):
            _add_type(builder, namespace.id)
        # Occasionally a sibling namespace so trees are not pure chains.
        if depth + 1 < builder.params.namespace_depth and rng.random() < 0.35:
            sibling = Entity(
                id=builder.fresh_id(parent, rng.choice(_NAMESPACE_WORDS)),
                name=name,
                kind=EntityKind.NAMESPACE,
                diagnostics=builder.maybe_diagnostics(),
            )
            builder.add(sibling, parent)
            for _ in range(builder.params.types_per_namespace):
                _add_type(builder, sibling.id)
        parent = namespace.id


def generate_synthetic(params: SyntheticParams) -> EntityGraph:
    """Build a valid synthetic graph; byte-identical output for equal params."""
    rng = random.Random(params.seed)
    builder = _Builder(rng, params)

    solution_name = f"{rng.choice(_AREAS)}Suite"
    solution = Entity(id="sln", name=solution_name, kind=EntityKind.SOLUTION)
    builder.add(solution, None)

    project_ids = []
    for p in range(params.project_count):
        name = f"{solution_name}.{rng.choice(_NAMESPACE_WORDS)}{p}"
        project = Entity(
            id=builder.fresh_id("sln", name),
            name=name,
            kind=EntityKind.PROJECT,
            comment=builder.maybe_comment(f"project {name}"),
            diagnostics=builder.maybe_diagnostics(),
        )
        builder.add(project, "sln")
        project_ids.append(project.id)
        _add_namespaces(builder, project.id)

    for i, source in enumerate(project_ids):
        for target in project_ids[:i]:
            if rng.random() < 0.3:
                builder.depends.append((source, target))

    # Patch placeholder targets now that the full type population is known.
    def patched(pairs: list[tuple[str, str]]) -> list[tuple[str, str]]:
        fixed = []
        for source, target in pairs:
            if target == "?":
                if not builder.type_ids or rng.random() < 0.4:
                    continue  # plain value, no edge
                target = rng.choice(builder.type_ids)
            fixed.append((source, target))
        return fixed

    relations = [
        Relation.of("declares", builder.declares),
        Relation.of("inheritsFrom", builder.inherits),
        Relation.of("typeOf", patched(builder.type_of)),
        Relation.of("returns", patched(builder.returns)),
        Relation.of("dependsOn", builder.depends),
    ]
    return build_graph(
        builder.entities, relations, label=f"{solution_name} (seed {params.seed})"
    )
