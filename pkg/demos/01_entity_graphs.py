"""
Building and querying entity graphs
===================================

The graph is the ground truth everything else consumes: entities (solution,
projects, namespaces, types, members) plus named relations. Construction
validates every structural invariant up front, so downstream code never
defends against cycles or dangling edges.
"""

from helgraph import (
    Accessibility,
    Diagnostic,
    Entity,
    EntityKind,
    MethodKind,
    Relation,
    Severity,
    TypeKind,
    build_graph,
    diagnostic_rollup,
    member_counts,
    subtree_height,
    validate,
)


def e(id, kind, **kw):
    return Entity(id=id, name=id.rsplit("/", 1)[-1], kind=EntityKind(kind), **kw)


entities = [
    e("app", "solution"),
    e("app/Web", "project"),
    e("app/Web/Controllers", "namespace"),
    e(
        "app/Web/Controllers/MediaController",
        "type",
        type_kind=TypeKind.CLASS,
        accessibility=Accessibility.PUBLIC,
        is_sealed=True,
    ),
    e(
        "app/Web/Controllers/MediaController/Get",
        "method",
        method_kind=MethodKind.ORDINARY,
        accessibility=Accessibility.PUBLIC,
        diagnostics=(Diagnostic(Severity.WARNING, "HG0420", "unused local"),),
    ),
    e(
        "app/Web/Controllers/MediaController/cache",
        "field",
        accessibility=Accessibility.PRIVATE,
        is_static=True,
    ),
]

declares = Relation.of(
    "declares",
    [
        ("app", "app/Web"),
        ("app/Web", "app/Web/Controllers"),
        ("app/Web/Controllers", "app/Web/Controllers/MediaController"),
        ("app/Web/Controllers/MediaController", "app/Web/Controllers/MediaController/Get"),
        ("app/Web/Controllers/MediaController", "app/Web/Controllers/MediaController/cache"),
    ],
)

graph = build_graph(entities, [declares], label="demo")
print(f"graph has {len(graph)} entities, roots: {graph.roots}")

# Subtree height drives the radius bonus of structural nodes.
for node in ("app", "app/Web", "app/Web/Controllers/MediaController"):
    print(f"subtree height of {node!r}: {subtree_height(graph, node)}")

# The donut chart reads these two numbers.
static, instance = member_counts(graph, "app/Web/Controllers/MediaController")
print(f"MediaController members: {static} static, {instance} instance")

# The warning on Get is invisible to the node itself but rolls up to every
# ancestor as a subtree indicator.
print("rollup at solution:", diagnostic_rollup(graph, "app"))
print("rollup at the method itself:", diagnostic_rollup(
    graph, "app/Web/Controllers/MediaController/Get"))

# validate() reports problems as data instead of raising.
broken = entities + [e("app/Web2", "project")]  # no declares parent
print("violations in broken variant:", [str(v) for v in validate(broken, [declares])])
