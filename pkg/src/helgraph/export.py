"""Static export: a self-contained bundle a browser can open with no server.

Bundle layout::

    <out>/
      index.html                 entry document with inlined bootstrap data
      assets/                    viewer code and styles
      assets/core.js             portable core module (in-process backend)
      data/graph.helgraph.json   canonical interchange document

When the full web viewer has been built (``HELGRAPH_VIEWER_DIST`` or the
packaged ``viewer_dist`` directory), its assets are copied and the bootstrap
data is injected into its entry page. Otherwise a minimal built-in viewer is
emitted so the bundle is still inspectable.
"""

from __future__ import annotations

import json
import os
import shutil
from importlib import resources
from pathlib import Path
from typing import Optional

from .config import EngineConfig
from .errors import ExportError
from .interchange import write_interchange
from .model import EntityGraph
from .session import create_session

VIEWER_DIST_ENV = "HELGRAPH_VIEWER_DIST"
DATA_SCRIPT_ID = "helgraph-data"
_PLACEHOLDER = f'<script id="{DATA_SCRIPT_ID}" type="application/json">null</script>'


def _escape_inline_json(text: str) -> str:
    # "</script>" inside the payload must not close the script element.
    return text.replace("</", "<\\/").replace(" ", "\\u2028").replace(
        " ", "\\u2029"
    )


def bootstrap_payload(graph: EntityGraph, config: EngineConfig) -> dict:
    """Everything a viewer needs to boot in-process, precomputed and inert."""
    session = create_session(graph, config)
    visible = session.visible_ids()
    edges = []
    for name, shown in sorted(session.relation_visibility.items()):
        if not shown:
            continue
        style = config.relations[name]
        for source, target in graph.relation(name).sorted_edges():
            if source in visible and target in visible:
                edges.append(
                    {
                        "source": source,
                        "target": target,
                        "relation": name,
                        "color": style.color,
                        "thickness": style.thickness,
                    }
                )
    return {
        "document": json.loads(write_interchange(graph).decode("utf-8")),
        "config": config.to_json(),
        "initial": {
            "summary": session.state_summary(),
            "positions": session.snapshot()["positions"],
            "glyphs": {
                node_id: glyph.to_json()
                for node_id, glyph in session.glyphs().items()
            },
            "edges": edges,
            "names": {
                node_id: graph.entity(node_id).name for node_id in sorted(visible)
            },
        },
    }


def _viewer_dist_dir() -> Optional[Path]:
    env = os.environ.get(VIEWER_DIST_ENV)
    if env:
        path = Path(env)
        if (path / "index.html").exists():
            return path
    try:
        packaged = resources.files("helgraph") / "viewer_dist"
        candidate = Path(str(packaged))
        if (candidate / "index.html").exists():
            return candidate
    except (ModuleNotFoundError, FileNotFoundError, TypeError):
        pass
    return None


_FALLBACK_PAGE = """<!DOCTYPE html>
<html>
<head>
<meta charset="utf-8">
<title>helgraph diagram</title>
<style>
  body { margin: 0; font: 13px system-ui, sans-serif; background: #fafafa; }
  #info { position: fixed; top: 8px; left: 8px; background: #ffffffee;
          border: 1px solid #ccc; border-radius: 6px; padding: 8px 12px; }
  #hud  { position: fixed; bottom: 8px; left: 8px; color: #666; }
  svg   { width: 100vw; height: 100vh; cursor: grab; }
</style>
</head>
<body>
PLACEHOLDER
<div id="info">helgraph static bundle</div>
<div id="hud">drag to pan, wheel to zoom, click a node to inspect</div>
<svg id="scene"><g id="world"></g></svg>
<script src="assets/core.js"></script>
</body>
</html>
"""

_FALLBACK_CORE = """// Minimal in-bundle viewer: renders the precomputed snapshot.
(function () {
  const raw = document.getElementById("helgraph-data").textContent;
  const data = JSON.parse(raw);
  const world = document.getElementById("world");
  const svg = document.getElementById("scene");
  const info = document.getElementById("info");
  const positions = data.initial.positions;
  const glyphs = data.initial.glyphs;
  const names = data.initial.names;
  const NS = "http://www.w3.org/2000/svg";

  for (const edge of data.initial.edges) {
    const a = positions[edge.source], b = positions[edge.target];
    if (!a || !b) continue;
    const line = document.createElementNS(NS, "line");
    line.setAttribute("x1", a[0]); line.setAttribute("y1", a[1]);
    line.setAttribute("x2", b[0]); line.setAttribute("y2", b[1]);
    line.setAttribute("stroke", edge.color);
    line.setAttribute("stroke-width", edge.thickness);
    world.appendChild(line);
  }
  for (const id of Object.keys(positions)) {
    const pos = positions[id], glyph = glyphs[id] || {};
    const circle = document.createElementNS(NS, "circle");
    circle.setAttribute("cx", pos[0]); circle.setAttribute("cy", pos[1]);
    circle.setAttribute("r", glyph.radius || 6);
    circle.setAttribute("fill", glyph.fillColor || "#888");
    circle.setAttribute("stroke", "#333");
    circle.style.cursor = "pointer";
    circle.addEventListener("click", function () {
      info.textContent = (names[id] || id) + "  [" + (glyph.iconId || "?") + "]";
    });
    world.appendChild(circle);
  }

  let view = { x: 0, y: 0, k: 1 };
  function apply() {
    world.setAttribute("transform",
      "translate(" + (view.x + svg.clientWidth / 2) + "," +
      (view.y + svg.clientHeight / 2) + ") scale(" + view.k + ")");
  }
  let drag = null;
  svg.addEventListener("mousedown", (e) => { drag = [e.clientX, e.clientY]; });
  window.addEventListener("mouseup", () => { drag = null; });
  window.addEventListener("mousemove", (e) => {
    if (!drag) return;
    view.x += e.clientX - drag[0]; view.y += e.clientY - drag[1];
    drag = [e.clientX, e.clientY]; apply();
  });
  svg.addEventListener("wheel", (e) => {
    e.preventDefault();
    view.k *= e.deltaY < 0 ? 1.1 : 0.9; apply();
  }, { passive: false });
  apply();
})();
"""


def export_static(
    graph: EntityGraph,
    config: Optional[EngineConfig] = None,
    out_dir: str | Path = "helgraph-bundle",
) -> Path:
    """Write the bundle; returns the output directory path."""
    config = config or EngineConfig()
    out = Path(out_dir)
    try:
        (out / "assets").mkdir(parents=True, exist_ok=True)
        (out / "data").mkdir(parents=True, exist_ok=True)
        (out / "data" / "graph.helgraph.json").write_bytes(write_interchange(graph))

        payload = json.dumps(
            bootstrap_payload(graph, config), ensure_ascii=False, sort_keys=True
        )
        inline = (
            f'<script id="{DATA_SCRIPT_ID}" type="application/json">'
            f"{_escape_inline_json(payload)}</script>"
        )

        dist = _viewer_dist_dir()
        if dist is not None:
            for item in sorted(dist.rglob("*")):
                relative = item.relative_to(dist)
                target = out / relative
                if item.is_dir():
                    target.mkdir(parents=True, exist_ok=True)
                else:
                    target.parent.mkdir(parents=True, exist_ok=True)
                    shutil.copyfile(item, target)
            index_path = out / "index.html"
            page = index_path.read_text(encoding="utf-8")
            if _PLACEHOLDER in page:
                page = page.replace(_PLACEHOLDER, inline, 1)
            else:
                page = page.replace("</head>", inline + "\n</head>", 1)
            index_path.write_text(page, encoding="utf-8")
        else:
            page = _FALLBACK_PAGE.replace("PLACEHOLDER", inline, 1)
            (out / "index.html").write_text(page, encoding="utf-8")
            (out / "assets" / "core.js").write_text(_FALLBACK_CORE, encoding="utf-8")
    except OSError as exc:
        raise ExportError(f"cannot write bundle to {out}: {exc}") from None
    return out
