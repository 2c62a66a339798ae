"""Engine configuration: color preset, scaling, layout constants, relations.

Configuration lives in a JSON file (default ``helgraph.config.json`` in the
working directory); the ``HELGRAPH_CONFIG`` environment variable overrides
the path. Every knob has a sensible default, so no file is required.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass, field
from typing import Any, Optional

from .errors import ConfigError
from .forcelayout import ForceConfig
from .glyphs import (
    DEFAULT_CONSTANTS,
    PRESETS,
    ColorPreset,
    GlyphConstants,
    ScalingMode,
)
from .model import EntityKind, RelationName, TypeKind

ENV_VAR = "HELGRAPH_CONFIG"
DEFAULT_FILENAME = "helgraph.config.json"


@dataclass(frozen=True)
class RelationStyle:
    color: str
    thickness: float
    visible: bool


DEFAULT_RELATION_STYLES: dict[str, RelationStyle] = {
    RelationName.DECLARES.value: RelationStyle("#9aa0a6", 1.0, True),
    RelationName.INHERITS_FROM.value: RelationStyle("#12b886", 1.5, True),
    RelationName.TYPE_OF.value: RelationStyle("#9c36b5", 1.0, False),
    RelationName.RETURNS.value: RelationStyle("#7950f2", 1.0, False),
    RelationName.DEPENDS_ON.value: RelationStyle("#e8590c", 1.5, True),
    RelationName.REFERENCES.value: RelationStyle("#adb5bd", 0.75, False),
}


@dataclass(frozen=True)
class EngineConfig:
    color_preset: str = "Universal"
    custom_colors: dict[str, str] = field(default_factory=dict)
    scaling_mode: ScalingMode = ScalingMode.SQRT
    ring_gap: float = 120.0
    stream_rate: float = 30.0
    force: ForceConfig = field(default_factory=ForceConfig)
    relations: dict[str, RelationStyle] = field(
        default_factory=lambda: dict(DEFAULT_RELATION_STYLES)
    )
    glyph_constants: GlyphConstants = field(default_factory=lambda: DEFAULT_CONSTANTS)

    def resolve_color_preset(self) -> ColorPreset:
        base = PRESETS.get(self.color_preset, PRESETS["Universal"])
        if not self.custom_colors:
            return base
        overrides = {}
        for key, color in self.custom_colors.items():
            kind_part, _, type_part = key.partition("/")
            kind = EntityKind(kind_part)
            type_kind = TypeKind(type_part) if type_part else None
            overrides[(kind, type_kind)] = color
        return base.with_overrides(overrides)

    def relation_visibility(self) -> dict[str, bool]:
        return {name: style.visible for name, style in self.relations.items()}

    def to_json(self) -> dict[str, Any]:
        return {
            "colorPreset": self.color_preset,
            "customColors": dict(self.custom_colors),
            "scalingMode": self.scaling_mode.value,
            "ringGap": self.ring_gap,
            "streamRate": self.stream_rate,
            "force": {
                "repulsionScale": self.force.repulsion_scale,
                "gravity": self.force.gravity,
                "edgeWeightInfluence": self.force.edge_weight_influence,
                "tractionThreshold": self.force.traction_threshold,
                "maxIterations": self.force.max_iterations,
                "barnesHutTheta": self.force.barnes_hut_theta,
                "barnesHutCutover": self.force.barnes_hut_cutover,
                "seed": self.force.seed,
            },
            "relations": {
                name: {
                    "color": style.color,
                    "thickness": style.thickness,
                    "visible": style.visible,
                }
                for name, style in self.relations.items()
            },
            "glyphConstants": {
                "baseRadius": {
                    kind.value: radius
                    for kind, radius in self.glyph_constants.base_radius.items()
                },
                "heightBonus": self.glyph_constants.height_bonus,
                "linearScale": self.glyph_constants.linear_scale,
                "sqrtScale": self.glyph_constants.sqrt_scale,
                "logScale": self.glyph_constants.log_scale,
                "donutBaseWidth": self.glyph_constants.donut_base_width,
                "donutWidthPerMember": self.glyph_constants.donut_width_per_member,
                "donutMaxWidth": self.glyph_constants.donut_max_width,
                "hatchInstanceSector": self.glyph_constants.hatch_instance_sector,
            },
        }


def _merge_force(base: ForceConfig, raw: dict[str, Any]) -> ForceConfig:
    mapping = {
        "repulsionScale": "repulsion_scale",
        "gravity": "gravity",
        "edgeWeightInfluence": "edge_weight_influence",
        "tractionThreshold": "traction_threshold",
        "maxIterations": "max_iterations",
        "barnesHutTheta": "barnes_hut_theta",
        "barnesHutCutover": "barnes_hut_cutover",
        "seed": "seed",
    }
    updates = {}
    for key, value in raw.items():
        if key not in mapping:
            raise ConfigError(f"unknown force option {key!r}")
        updates[mapping[key]] = value
    try:
        return dataclasses.replace(base, **updates)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad force configuration: {exc}") from None


def _merge_glyph_constants(base: GlyphConstants, raw: dict[str, Any]) -> GlyphConstants:
    mapping = {
        "heightBonus": "height_bonus",
        "linearScale": "linear_scale",
        "sqrtScale": "sqrt_scale",
        "logScale": "log_scale",
        "donutBaseWidth": "donut_base_width",
        "donutWidthPerMember": "donut_width_per_member",
        "donutMaxWidth": "donut_max_width",
        "hatchInstanceSector": "hatch_instance_sector",
    }
    updates: dict[str, Any] = {}
    for key, value in raw.items():
        if key == "baseRadius":
            radii = dict(base.base_radius)
            for kind_name, radius in value.items():
                radii[EntityKind(kind_name)] = float(radius)
            updates["base_radius"] = radii
        elif key in mapping:
            updates[mapping[key]] = value
        else:
            raise ConfigError(f"unknown glyph constant {key!r}")
    return dataclasses.replace(base, **updates)


def config_from_json(raw: dict[str, Any], base: Optional[EngineConfig] = None) -> EngineConfig:
    """Merge a JSON document over ``base`` (or the defaults)."""
    config = base if base is not None else EngineConfig()
    updates: dict[str, Any] = {}
    try:
        for key, value in raw.items():
            if key == "colorPreset":
                if value not in PRESETS and value != "custom":
                    raise ConfigError(f"unknown color preset {value!r}")
                updates["color_preset"] = value
            elif key == "customColors":
                updates["custom_colors"] = dict(value)
            elif key == "scalingMode":
                updates["scaling_mode"] = ScalingMode(value)
            elif key == "ringGap":
                updates["ring_gap"] = float(value)
            elif key == "streamRate":
                updates["stream_rate"] = float(value)
            elif key == "force":
                updates["force"] = _merge_force(config.force, value)
            elif key == "relations":
                relations = dict(config.relations)
                for name, style_raw in value.items():
                    if name not in DEFAULT_RELATION_STYLES:
                        raise ConfigError(f"unknown relation {name!r}")
                    current = relations[name]
                    relations[name] = RelationStyle(
                        color=style_raw.get("color", current.color),
                        thickness=float(
                            style_raw.get("thickness", current.thickness)
                        ),
                        visible=bool(style_raw.get("visible", current.visible)),
                    )
                updates["relations"] = relations
            elif key == "glyphConstants":
                updates["glyph_constants"] = _merge_glyph_constants(
                    config.glyph_constants, value
                )
            else:
                raise ConfigError(f"unknown configuration key {key!r}")
    except (ValueError, TypeError, AttributeError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad configuration value: {exc}") from None
    return dataclasses.replace(config, **updates)


def resolve_config_path(explicit: Optional[str] = None) -> Optional[str]:
    if explicit:
        return explicit
    env = os.environ.get(ENV_VAR)
    if env:
        return env
    if os.path.exists(DEFAULT_FILENAME):
        return DEFAULT_FILENAME
    return None


def load_config(path: Optional[str] = None) -> EngineConfig:
    """Read configuration from ``path``/env/default file, or pure defaults."""
    resolved = resolve_config_path(path)
    if resolved is None:
        return EngineConfig()
    try:
        with open(resolved, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except FileNotFoundError:
        raise ConfigError(f"configuration file not found: {resolved}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid configuration JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("configuration root must be an object")
    return config_from_json(raw)
