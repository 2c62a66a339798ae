"""
The glyph rulebook
==================

Every visual attribute of a node is a pure function of the entity, the
graph, and the view state. This walkthrough prints the glyph bundle for a
set of representative nodes: radius scaling, stroked/filled icons, badges,
polygon contours for abstract/sealed, the member-ratio donut, and the
fire/smoke diagnostic effects.
"""

from helgraph import (
    PRESETS,
    ScalingMode,
    SyntheticParams,
    compute_glyph,
    compute_radius,
    generate_synthetic,
)
from helgraph.model import EntityKind

graph = generate_synthetic(SyntheticParams(seed=12, project_count=2, members_per_type=6))

print(f"{'entity':44s} {'icon':12s} {'style':8s} {'contour':14s} {'donut':16s} effect")
print("-" * 110)
shown = 0
for eid, entity in sorted(graph.entities.items()):
    if entity.kind not in (EntityKind.TYPE, EntityKind.METHOD, EntityKind.PROPERTY):
        continue
    glyph = compute_glyph(entity, graph)
    donut = (
        f"{glyph.donut.static_fraction:.2f}/{glyph.donut.instance_fraction:.2f} w{glyph.donut.width:.1f}"
        if glyph.donut
        else "-"
    )
    print(
        f"{entity.name[:42]:44s} {glyph.icon_id:12s} {glyph.icon_style.value:8s} "
        f"{glyph.contour.value:14s} {donut:16s} {glyph.effect.value}"
    )
    shown += 1
    if shown >= 14:
        break

# Radius scaling modes tame very large types.
big_type = next(
    eid for eid, e in sorted(graph.entities.items()) if e.kind is EntityKind.TYPE
)
entity = graph.entity(big_type)
print(f"\nradius of {entity.name!r} under each scaling mode:")
for mode in ScalingMode:
    print(f"  {mode.value:8s} {compute_radius(entity, graph, mode):.2f}")

# Three color presets ship built in; all colors are overridable.
print("\nsolution color per preset:", {
    name: preset.color_for(EntityKind.SOLUTION) for name, preset in PRESETS.items()
})
