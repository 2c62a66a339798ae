"""Local HTTP session API: JSON request/response plus an SSE layout stream.

One server owns one session. State-changing requests are serialized through
a lock (single-writer rule); any number of read-only viewers may subscribe
to ``GET /layout/stream``, which pushes position snapshots at a capped rate
while layout runs.
"""

from __future__ import annotations

import json
import queue
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Any, Optional
from urllib.parse import parse_qs, unquote, urlparse

from .config import EngineConfig, config_from_json
from .errors import (
    ConfigError,
    FilterError,
    HelgraphError,
    NoChildrenError,
    NotExpandedError,
    NotVisibleError,
    UnknownIdError,
    UnknownPresetError,
)
from .filters import parse_query
from .model import EntityGraph
from .session import PRESET_NAMES, DiagramSession, create_session

_BAD_REQUEST = (
    NotVisibleError,
    NoChildrenError,
    NotExpandedError,
    UnknownPresetError,
    FilterError,
    ConfigError,
)


class SessionServer:
    """Serves one diagram session over local HTTP."""

    def __init__(
        self,
        graph: EntityGraph,
        config: Optional[EngineConfig] = None,
        host: str = "127.0.0.1",
        port: int = 0,
    ):
        self.session = create_session(graph, config)
        self.lock = threading.RLock()
        server = self

        class Handler(BaseHTTPRequestHandler):
            protocol_version = "HTTP/1.1"

            def log_message(self, *args):  # quiet by default
                pass

            def do_GET(self):
                server._handle(self, "GET")

            def do_POST(self):
                server._handle(self, "POST")

            def do_PUT(self):
                server._handle(self, "PUT")

        self.httpd = ThreadingHTTPServer((host, port), Handler)
        self.httpd.daemon_threads = True

    @property
    def address(self) -> tuple[str, int]:
        return self.httpd.server_address[0], self.httpd.server_address[1]

    def serve_forever(self) -> None:
        self.httpd.serve_forever()

    def start_background(self) -> threading.Thread:
        thread = threading.Thread(target=self.serve_forever, daemon=True)
        thread.start()
        return thread

    def close(self) -> None:
        self.httpd.shutdown()
        self.httpd.server_close()

    # ------------------------------------------------------------------

    def _send_json(self, handler, payload: Any, status: int = 200) -> None:
        body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        handler.send_response(status)
        handler.send_header("Content-Type", "application/json; charset=utf-8")
        handler.send_header("Content-Length", str(len(body)))
        handler.send_header("Access-Control-Allow-Origin", "*")
        handler.end_headers()
        handler.wfile.write(body)

    def _send_error(self, handler, exc: Exception, status: int) -> None:
        self._send_json(
            handler,
            {"error": {"type": type(exc).__name__, "message": str(exc)}},
            status,
        )

    def _read_body(self, handler) -> dict:
        length = int(handler.headers.get("Content-Length") or 0)
        if length == 0:
            return {}
        raw = handler.rfile.read(length)
        try:
            payload = json.loads(raw or b"{}")
        except json.JSONDecodeError as exc:
            raise ValueError(f"request body is not valid JSON: {exc}") from None
        if not isinstance(payload, dict):
            raise ValueError("request body must be a JSON object")
        return payload

    def _handle(self, handler, method: str) -> None:
        parsed = urlparse(handler.path)
        path = parsed.path.rstrip("/") or "/"
        try:
            if method == "GET" and path == "/graph/meta":
                self._send_json(handler, self._meta())
            elif method == "GET" and path.startswith("/node/"):
                node_id = unquote(path[len("/node/"):])
                with self.lock:
                    payload = self.session.inspect(node_id).to_json(
                        self.session.graph
                    )
                self._send_json(handler, payload)
            elif method == "GET" and path == "/glyphs":
                params = parse_qs(parsed.query)
                ids = None
                if "ids" in params:
                    ids = [i for i in params["ids"][0].split(",") if i]
                with self.lock:
                    glyphs = self.session.glyphs(ids)
                self._send_json(
                    handler, {k: g.to_json() for k, g in glyphs.items()}
                )
            elif method == "GET" and path == "/config":
                with self.lock:
                    self._send_json(handler, self.session.config.to_json())
            elif method == "PUT" and path == "/config":
                body = self._read_body(handler)
                with self.lock:
                    merged = config_from_json(body, base=self.session.config)
                    self.session.update_config(merged)
                    self._send_json(handler, self.session.config.to_json())
            elif method == "GET" and path == "/layout/stream":
                self._stream(handler)
            elif method == "POST" and path.startswith("/session/"):
                action = path[len("/session/"):]
                body = self._read_body(handler)
                self._send_json(handler, self._session_action(action, body))
            elif method == "POST" and path == "/filter":
                body = self._read_body(handler)
                self._send_json(handler, self._filter(body))
            else:
                self._send_json(
                    handler,
                    {"error": {"type": "NotFound", "message": f"no route {path}"}},
                    404,
                )
        except UnknownIdError as exc:
            self._send_error(handler, exc, 404)
        except _BAD_REQUEST as exc:
            self._send_error(handler, exc, 400)
        except (ValueError, KeyError, TypeError) as exc:
            self._send_error(handler, exc, 400)
        except BrokenPipeError:
            pass
        except HelgraphError as exc:
            self._send_error(handler, exc, 500)

    # ------------------------------------------------------------------

    def _meta(self) -> dict:
        with self.lock:
            session = self.session
            graph = session.graph
            kind_counts: dict[str, int] = {}
            for entity in graph.entities.values():
                kind_counts[entity.kind.value] = (
                    kind_counts.get(entity.kind.value, 0) + 1
                )
            return {
                "label": graph.metadata.label,
                "formatVersion": graph.metadata.format_version,
                "entityCount": len(graph),
                "kindCounts": dict(sorted(kind_counts.items())),
                "relations": {
                    name: {
                        "edgeCount": len(graph.relation(name).edges),
                        "color": style.color,
                        "thickness": style.thickness,
                        "edges": [
                            [s, t] for s, t in graph.relation(name).sorted_edges()
                        ],
                    }
                    for name, style in session.config.relations.items()
                },
                "presets": list(PRESET_NAMES),
                "session": session.state_summary(),
                "names": {
                    eid: entity.name
                    for eid, entity in sorted(graph.entities.items())
                },
                "kinds": {
                    eid: entity.kind.value
                    for eid, entity in sorted(graph.entities.items())
                },
            }

    def _session_action(self, action: str, body: dict) -> dict:
        session = self.session
        with self.lock:
            if action == "expand":
                session.expand(str(body["id"]))
            elif action == "collapse":
                session.collapse(str(body["id"]))
            elif action == "remove":
                session.remove_subtree(str(body["id"]))
            elif action == "refresh":
                session.refresh()
            elif action == "preset":
                session.apply_preset(str(body["name"]))
            elif action == "move":
                session.move_node(
                    str(body["id"]),
                    (float(body["x"]), float(body["y"])),
                    pin=bool(body.get("pin", False)),
                )
            elif action == "select":
                target = body.get("id")
                session.select(None if target is None else str(target))
            else:
                raise ValueError(f"unknown session action {action!r}")
            summary = session.state_summary()
            summary["positions"] = self.session.snapshot()["positions"]
            return summary

    def _filter(self, body: dict) -> dict:
        raw_query = body.get("query")
        if isinstance(raw_query, dict):
            query = parse_query(
                raw_query.get("mode", "fullText"), str(raw_query.get("text", ""))
            )
        elif isinstance(raw_query, str):
            query = parse_query(body.get("queryMode", "fullText"), raw_query)
        else:
            raise ValueError("filter body needs a 'query'")
        mode = body.get("mode", "highlight")
        with self.lock:
            matched = self.session.apply_filter(query, mode)
            summary = self.session.state_summary()
        summary["matched"] = sorted(matched)
        summary["query"] = {"mode": query.mode.value, "text": query.text}
        return summary

    def _stream(self, handler) -> None:
        """Server-sent events: layout snapshots at a capped rate."""
        inbox: queue.Queue = queue.Queue(maxsize=4)

        def listener(snapshot: dict) -> None:
            try:
                inbox.put_nowait(snapshot)
            except queue.Full:
                try:  # drop the oldest, keep the freshest
                    inbox.get_nowait()
                    inbox.put_nowait(snapshot)
                except (queue.Empty, queue.Full):
                    pass

        with self.lock:
            self.session.snapshot_listeners.append(listener)
            first = self.session.snapshot()
            min_interval = 1.0 / max(self.session.config.stream_rate, 1e-3)

        handler.send_response(200)
        handler.send_header("Content-Type", "text/event-stream")
        handler.send_header("Cache-Control", "no-cache")
        handler.send_header("Access-Control-Allow-Origin", "*")
        handler.end_headers()

        def emit(snapshot: dict) -> None:
            data = json.dumps(snapshot, ensure_ascii=False)
            handler.wfile.write(f"data: {data}\n\n".encode("utf-8"))
            handler.wfile.flush()

        try:
            emit(first)
            last_sent = time.monotonic()
            while True:
                try:
                    snapshot = inbox.get(timeout=15.0)
                except queue.Empty:
                    handler.wfile.write(b": keepalive\n\n")
                    handler.wfile.flush()
                    continue
                wait = min_interval - (time.monotonic() - last_sent)
                if wait > 0:
                    time.sleep(wait)
                    # collapse any burst that arrived while rate-limited
                    while True:
                        try:
                            snapshot = inbox.get_nowait()
                        except queue.Empty:
                            break
                emit(snapshot)
                last_sent = time.monotonic()
        except (BrokenPipeError, ConnectionResetError):
            pass
        finally:
            with self.lock:
                if listener in self.session.snapshot_listeners:
                    self.session.snapshot_listeners.remove(listener)


def serve(
    graph: EntityGraph,
    config: Optional[EngineConfig] = None,
    host: str = "127.0.0.1",
    port: int = 0,
) -> SessionServer:
    """Construct a server bound to ``host:port`` (0 picks a free port)."""
    return SessionServer(graph, config, host, port)
