"""Shared helpers: tiny entity factories and a random valid-graph generator.

The random generator here is deliberately independent of
``helgraph.synthetic`` so it can serve as a second opinion in oracle tests.
"""

from __future__ import annotations

import random

from helgraph.model import (
    Accessibility,
    Diagnostic,
    Entity,
    EntityGraph,
    EntityKind,
    MethodKind,
    Relation,
    Severity,
    TypeKind,
    build_graph,
)


def ent(entity_id: str, kind: str, name: str | None = None, **kw) -> Entity:
    """Shorthand entity constructor used throughout the tests."""
    if kind == "type" and "type_kind" not in kw:
        kw["type_kind"] = TypeKind.CLASS
    if kind == "method" and "method_kind" not in kw:
        kw["method_kind"] = MethodKind.ORDINARY
    for key, enum_cls in (
        ("type_kind", TypeKind),
        ("method_kind", MethodKind),
        ("accessibility", Accessibility),
    ):
        if isinstance(kw.get(key), str):
            kw[key] = enum_cls(kw[key])
    return Entity(id=entity_id, name=name or entity_id, kind=EntityKind(kind), **kw)


def declares(*edges: tuple[str, str]) -> Relation:
    return Relation.of("declares", edges)


def solution_project_graph() -> EntityGraph:
    return build_graph(
        [ent("S", "solution"), ent("P", "project")],
        [declares(("S", "P"))],
    )


# Kinds a random child may take below each parent kind.
_CHILD_CHOICES = {
    EntityKind.SOLUTION: [EntityKind.PROJECT],
    EntityKind.PROJECT: [EntityKind.NAMESPACE],
    EntityKind.NAMESPACE: [EntityKind.NAMESPACE, EntityKind.TYPE, EntityKind.TYPE],
    EntityKind.TYPE: [
        EntityKind.FIELD,
        EntityKind.METHOD,
        EntityKind.PROPERTY,
        EntityKind.EVENT,
        EntityKind.TYPE,
    ],
    EntityKind.METHOD: [EntityKind.PARAMETER],
}


def random_tree_graph(
    rng: random.Random,
    max_nodes: int = 100,
    diagnostic_rate: float = 0.15,
) -> EntityGraph:
    """A random declares-only graph respecting the kind hierarchy."""
    entities = [ent("n0", "solution")]
    edges: list[tuple[str, str]] = []
    open_parents = [entities[0]]
    while len(entities) < max_nodes:
        parent = rng.choice(open_parents)
        kind = rng.choice(_CHILD_CHOICES[parent.kind])
        node_id = f"n{len(entities)}"
        kw: dict = {}
        if kind is EntityKind.TYPE:
            kw["type_kind"] = rng.choice(list(TypeKind))
            if kw["type_kind"] in (TypeKind.CLASS, TypeKind.STRUCT):
                kw["is_record"] = rng.random() < 0.2
        if kind is EntityKind.METHOD:
            kw["method_kind"] = rng.choice(list(MethodKind))
        if kind in (
            EntityKind.TYPE,
            EntityKind.FIELD,
            EntityKind.METHOD,
            EntityKind.PROPERTY,
            EntityKind.EVENT,
        ):
            kw["accessibility"] = rng.choice(list(Accessibility))
            kw["is_static"] = rng.random() < 0.3
            if rng.random() < 0.15:
                kw["is_abstract"] = True
            elif rng.random() < 0.15:
                kw["is_sealed"] = True
        if rng.random() < diagnostic_rate:
            severity = rng.choice(list(Severity))
            kw["diagnostics"] = (Diagnostic(severity, f"HG{rng.randrange(100):03d}"),)
        child = ent(node_id, kind.value, **kw)
        entities.append(child)
        edges.append((parent.id, node_id))
        if _CHILD_CHOICES.get(kind):
            open_parents.append(child)
        if len(open_parents) > 1 and rng.random() < 0.25:
            open_parents.remove(parent)
    return build_graph(entities, [declares(*edges)])
