"""Per-node visual attributes, computed purely from entity + graph + view state.

Every rule lives here so renderers stay dumb: radius scaling, icon choice,
color resolution, accessibility badges, modifier contours, the member-ratio
donut, diagnostic effects, and subtree indicators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

from .model import (
    Accessibility,
    Entity,
    EntityGraph,
    EntityKind,
    MethodKind,
    Severity,
    TypeKind,
    diagnostic_rollup,
    member_counts,
    subtree_height,
)

#: Canonical icon identifiers a renderer must provide artwork for.
ICON_IDS = (
    "solution",
    "project",
    "package",
    "namespace",
    "class",
    "recordClass",
    "struct",
    "recordStruct",
    "enum",
    "interface",
    "delegate",
    "field",
    "method",
    "property",
    "event",
    "parameter",
)


class ScalingMode(str, Enum):
    LINEAR = "linear"
    SQRT = "sqrt"
    LOG = "log"


class IconStyle(str, Enum):
    STROKED = "stroked"
    FILLED = "filled"


class Contour(str, Enum):
    NONE = "none"
    OCTAGON_SOLID = "octagonSolid"
    HEXAGON_DASHED = "hexagonDashed"


class Effect(str, Enum):
    NONE = "none"
    SMOKE = "smoke"
    FIRE = "fire"


class Indicator(str, Enum):
    COLLAPSED_SHADOW = "collapsedShadow"
    SUBTREE_ERROR = "subtreeError"
    SUBTREE_WARNING = "subtreeWarning"


@dataclass(frozen=True)
class GlyphConstants:
    """Numeric knobs of the glyph rulebook; every value is overridable."""

    base_radius: dict[EntityKind, float] = field(
        default_factory=lambda: {
            EntityKind.SOLUTION: 14.0,
            EntityKind.PROJECT: 12.0,
            EntityKind.PACKAGE: 10.0,
            EntityKind.NAMESPACE: 10.0,
            EntityKind.TYPE: 8.0,
            EntityKind.FIELD: 5.0,
            EntityKind.METHOD: 5.0,
            EntityKind.PROPERTY: 5.0,
            EntityKind.EVENT: 5.0,
            EntityKind.PARAMETER: 4.0,
        }
    )
    height_bonus: float = 2.0
    linear_scale: float = 0.25
    sqrt_scale: float = 1.5
    log_scale: float = 3.0
    donut_base_width: float = 2.0
    donut_width_per_member: float = 0.25
    donut_max_width: float = 12.0
    hatch_instance_sector: bool = True


DEFAULT_CONSTANTS = GlyphConstants()

#: Kinds whose radius grows with the height of their subtree.
_STRUCTURAL_KINDS = frozenset(
    {EntityKind.SOLUTION, EntityKind.PROJECT, EntityKind.NAMESPACE}
)


@dataclass(frozen=True)
class Donut:
    """Static/instance member ratio ring around a type node."""

    static_fraction: float
    instance_fraction: float
    width: float
    hatch_instance_sector: bool = True


@dataclass(frozen=True)
class GlyphSpec:
    """The full visual attribute bundle for one node."""

    radius: float
    icon_id: str
    icon_style: IconStyle
    method_badge: Optional[str] = None
    accessibility_badge: Optional[str] = None
    contour: Contour = Contour.NONE
    donut: Optional[Donut] = None
    effect: Effect = Effect.NONE
    indicators: frozenset[Indicator] = frozenset()
    fill_color: str = "#808080"

    def to_json(self) -> dict:
        payload: dict = {
            "radius": self.radius,
            "iconId": self.icon_id,
            "iconStyle": self.icon_style.value,
            "contour": self.contour.value,
            "effect": self.effect.value,
            "indicators": sorted(i.value for i in self.indicators),
            "fillColor": self.fill_color,
        }
        if self.method_badge is not None:
            payload["methodBadge"] = self.method_badge
        if self.accessibility_badge is not None:
            payload["accessibilityBadge"] = self.accessibility_badge
        if self.donut is not None:
            payload["donut"] = {
                "staticFraction": self.donut.static_fraction,
                "instanceFraction": self.donut.instance_fraction,
                "width": self.donut.width,
                "hatchInstanceSector": self.donut.hatch_instance_sector,
            }
        return payload


_UNIVERSAL = {
    EntityKind.SOLUTION: "#5f3dc4",
    EntityKind.PROJECT: "#e8590c",
    EntityKind.PACKAGE: "#99621e",
    EntityKind.NAMESPACE: "#1c7ed6",
    EntityKind.TYPE: "#e6b800",
    EntityKind.FIELD: "#4263eb",
    EntityKind.METHOD: "#7950f2",
    EntityKind.PROPERTY: "#2f9e44",
    EntityKind.EVENT: "#e03131",
    EntityKind.PARAMETER: "#74b816",
}
_UNIVERSAL_TYPES = {
    TypeKind.CLASS: "#e6b800",
    TypeKind.STRUCT: "#0ca678",
    TypeKind.ENUM: "#d6336c",
    TypeKind.INTERFACE: "#22b8cf",
    TypeKind.DELEGATE: "#ae3ec9",
}

_TYPE_FOCUS = {
    EntityKind.SOLUTION: "#2f2f2f",
    EntityKind.PROJECT: "#454545",
    EntityKind.PACKAGE: "#525252",
    EntityKind.NAMESPACE: "#5f5f5f",
    EntityKind.TYPE: "#e6b800",
    EntityKind.FIELD: "#787878",
    EntityKind.METHOD: "#6b6b6b",
    EntityKind.PROPERTY: "#858585",
    EntityKind.EVENT: "#929292",
    EntityKind.PARAMETER: "#a6a6a6",
}
_TYPE_FOCUS_TYPES = dict(_UNIVERSAL_TYPES)

_VS = {
    EntityKind.SOLUTION: "#68217a",
    EntityKind.PROJECT: "#00539c",
    EntityKind.PACKAGE: "#8b6c42",
    EntityKind.NAMESPACE: "#6d6d6d",
    EntityKind.TYPE: "#d7ba00",
    EntityKind.FIELD: "#2e86c1",
    EntityKind.METHOD: "#6f42c1",
    EntityKind.PROPERTY: "#388a34",
    EntityKind.EVENT: "#c50b0b",
    EntityKind.PARAMETER: "#808080",
}
_VS_TYPES = {
    TypeKind.CLASS: "#d7ba00",
    TypeKind.STRUCT: "#00838f",
    TypeKind.ENUM: "#dd6b20",
    TypeKind.INTERFACE: "#007acc",
    TypeKind.DELEGATE: "#b180d7",
}

ColorKey = tuple[EntityKind, Optional[TypeKind]]


@dataclass(frozen=True)
class ColorPreset:
    """A total mapping from (kind, optional type kind) to an sRGB hex color."""

    name: str
    kind_colors: dict[EntityKind, str]
    type_colors: dict[TypeKind, str] = field(default_factory=dict)
    overrides: dict[ColorKey, str] = field(default_factory=dict)

    def color_for(
        self, kind: EntityKind, type_kind: Optional[TypeKind] = None
    ) -> str:
        if (kind, type_kind) in self.overrides:
            return self.overrides[(kind, type_kind)]
        if (kind, None) in self.overrides:
            return self.overrides[(kind, None)]
        if kind is EntityKind.TYPE and type_kind is not None:
            if type_kind in self.type_colors:
                return self.type_colors[type_kind]
        return self.kind_colors[kind]

    def with_overrides(self, overrides: dict[ColorKey, str]) -> "ColorPreset":
        merged = dict(self.overrides)
        merged.update(overrides)
        return replace(self, name="custom", overrides=merged)


UNIVERSAL = ColorPreset("Universal", _UNIVERSAL, _UNIVERSAL_TYPES)
TYPE_FOCUS = ColorPreset("TypeFocus", _TYPE_FOCUS, _TYPE_FOCUS_TYPES)
VS = ColorPreset("VS", _VS, _VS_TYPES)

PRESETS = {p.name: p for p in (UNIVERSAL, TYPE_FOCUS, VS)}


def compute_radius(
    entity: Entity,
    graph: EntityGraph,
    mode: ScalingMode = ScalingMode.SQRT,
    constants: GlyphConstants = DEFAULT_CONSTANTS,
) -> float:
    """Starting radius by kind, plus hierarchy bonus, plus member scaling."""
    radius = constants.base_radius[entity.kind]
    if entity.kind in _STRUCTURAL_KINDS:
        radius += constants.height_bonus * subtree_height(graph, entity.id)
    if entity.kind is EntityKind.TYPE:
        static, instance = member_counts(graph, entity.id)
        total = static + instance
        if mode is ScalingMode.LINEAR:
            radius += constants.linear_scale * total
        elif mode is ScalingMode.SQRT:
            radius += constants.sqrt_scale * math.sqrt(total)
        else:
            radius += constants.log_scale * math.log(1 + total)
    return radius


def resolve_icon(entity: Entity) -> tuple[str, Optional[str]]:
    """(icon id, method-kind badge). Type-kind icons win over the kind icon."""
    if entity.kind is EntityKind.TYPE:
        assert entity.type_kind is not None
        if entity.is_record and entity.type_kind is TypeKind.CLASS:
            return "recordClass", None
        if entity.is_record and entity.type_kind is TypeKind.STRUCT:
            return "recordStruct", None
        return entity.type_kind.value, None
    if entity.kind is EntityKind.METHOD:
        badge = None
        if entity.method_kind is not None and entity.method_kind is not MethodKind.ORDINARY:
            badge = entity.method_kind.value
        return "method", badge
    return entity.kind.value, None


def resolve_color(entity: Entity, preset: ColorPreset = UNIVERSAL) -> str:
    return preset.color_for(entity.kind, entity.type_kind)


def _accessibility_badge(entity: Entity) -> Optional[str]:
    if entity.accessibility is None or entity.accessibility is Accessibility.PUBLIC:
        return None
    return entity.accessibility.value


def _effect(entity: Entity) -> Effect:
    if entity.has_diagnostic(Severity.ERROR):
        return Effect.FIRE
    if entity.has_diagnostic(Severity.WARNING):
        return Effect.SMOKE
    return Effect.NONE


def compute_glyph(
    entity: Entity,
    graph: EntityGraph,
    preset: ColorPreset = UNIVERSAL,
    mode: ScalingMode = ScalingMode.SQRT,
    is_collapsed: bool = False,
    constants: GlyphConstants = DEFAULT_CONSTANTS,
) -> GlyphSpec:
    """Assemble the complete glyph for one node under the given view state."""
    icon_id, method_badge = resolve_icon(entity)

    donut = None
    if entity.kind is EntityKind.TYPE:
        static, instance = member_counts(graph, entity.id)
        total = static + instance
        if total > 0:
            static_fraction = static / total
            donut = Donut(
                static_fraction=static_fraction,
                instance_fraction=1.0 - static_fraction,
                width=min(
                    constants.donut_base_width
                    + constants.donut_width_per_member * total,
                    constants.donut_max_width,
                ),
                hatch_instance_sector=constants.hatch_instance_sector,
            )

    if entity.is_sealed:
        contour = Contour.OCTAGON_SOLID
    elif entity.is_abstract:
        contour = Contour.HEXAGON_DASHED
    else:
        contour = Contour.NONE

    indicators = set()
    if is_collapsed and graph.children(entity.id):
        indicators.add(Indicator.COLLAPSED_SHADOW)
    sub_error, sub_warning = diagnostic_rollup(graph, entity.id)
    if sub_error:
        indicators.add(Indicator.SUBTREE_ERROR)
    if sub_warning:
        indicators.add(Indicator.SUBTREE_WARNING)

    return GlyphSpec(
        radius=compute_radius(entity, graph, mode, constants),
        icon_id=icon_id,
        icon_style=IconStyle.FILLED if entity.is_static else IconStyle.STROKED,
        method_badge=method_badge,
        accessibility_badge=_accessibility_badge(entity),
        contour=contour,
        donut=donut,
        effect=_effect(entity),
        indicators=frozenset(indicators),
        fill_color=resolve_color(entity, preset),
    )
