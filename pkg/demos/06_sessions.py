"""
Driving an exploration session
==============================

A session tracks what is expanded, removed, dimmed, and selected, re-running
the auto layout after each change. The same operations back the HTTP API
(`helgraph serve`) and the exported bundle; here we drive them directly.
"""

from helgraph import (
    EngineConfig,
    ForceConfig,
    SyntheticParams,
    create_session,
    export_static,
    generate_synthetic,
    parse_query,
)
from helgraph.model import EntityKind

graph = generate_synthetic(SyntheticParams(seed=42, project_count=8))
session = create_session(graph, EngineConfig(force=ForceConfig(max_iterations=50)))


def describe(label):
    kinds = {}
    for v in session.visible_ids():
        kind = graph.entity(v).kind.value
        kinds[kind] = kinds.get(kind, 0) + 1
    print(f"{label:34s} visible={dict(sorted(kinds.items()))}")


describe("default view (solution+projects)")

project = sorted(session.visible_ids() - {"sln"})[0]
session.expand(project)
describe(f"expanded {graph.entity(project).name!r}")

session.collapse(project)
describe("collapsed it again")

session.apply_preset("allTypes")
describe("preset: allTypes")

matched = session.apply_filter(parse_query("fullText", "service"), mode="isolate")
describe(f"isolated {len(matched)} matches")

session.refresh()
describe("refresh restores removals")

session.apply_preset("default")
payload = session.inspect(project)
print(f"\ninspector: {payload.declaration}")
print(f"glyph: icon={payload.glyph.icon_id} radius={payload.glyph.radius:.1f}")
neighbors = {name: len(sides['out']) + len(sides['in'])
             for name, sides in payload.neighbors.items()}
print(f"relation neighbors: {neighbors}")

out = export_static(graph, session.config, "session_demo_bundle")
print(f"\nexported a self-contained bundle to {out}/ (open index.html)")
