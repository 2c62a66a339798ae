"""Reading and writing the entity-graph interchange format.

Documents are UTF-8 JSON carried in ``.helgraph.json`` files. The writer
always emits the canonical form: entities sorted by id, relation pair lists
sorted by (source, target), fixed key order, no byte-order mark. Readers
accept any key/entity order; canonicality is a writer obligation only.

An *extractor* is any external program that prints a valid interchange
document for a given source path; :func:`run_extractor` shells out to one.
"""

from __future__ import annotations

import json
import subprocess
from typing import Any

from .errors import (
    ExtractionError,
    MalformedDocumentError,
    UnsupportedVersionError,
)
from .model import (
    RELATION_NAMES,
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

FORMAT_VERSION = "1.0"
FILE_EXTENSION = ".helgraph.json"


def _reject_duplicate_keys(pairs: list[tuple[str, Any]]) -> dict[str, Any]:
    obj: dict[str, Any] = {}
    for key, value in pairs:
        if key in obj:
            raise MalformedDocumentError(f"duplicate key {key!r}")
        obj[key] = value
    return obj


def _require(obj: dict, key: str, expected: type, where: str) -> Any:
    if key not in obj:
        raise MalformedDocumentError(f"{where}: missing {key!r}")
    value = obj[key]
    if not isinstance(value, expected):
        raise MalformedDocumentError(
            f"{where}: {key!r} must be {expected.__name__}, got {type(value).__name__}"
        )
    return value


def _enum(cls, raw: str, where: str):
    try:
        return cls(raw)
    except ValueError:
        raise MalformedDocumentError(f"{where}: no such {cls.__name__}: {raw!r}") from None


def _decode_entity(record: Any, index: int) -> Entity:
    where = f"entities[{index}]"
    if not isinstance(record, dict):
        raise MalformedDocumentError(f"{where}: must be an object")
    entity_id = _require(record, "id", str, where)
    where = f"entities[{index}] ({entity_id})"
    name = _require(record, "name", str, where)
    kind = _enum(EntityKind, _require(record, "kind", str, where), where)

    type_kind = None
    if "typeKind" in record:
        type_kind = _enum(TypeKind, _require(record, "typeKind", str, where), where)
    method_kind = None
    if "methodKind" in record:
        method_kind = _enum(
            MethodKind, _require(record, "methodKind", str, where), where
        )
    accessibility = None
    if "accessibility" in record:
        accessibility = _enum(
            Accessibility, _require(record, "accessibility", str, where), where
        )

    modifiers = record.get("modifiers", {})
    if not isinstance(modifiers, dict):
        raise MalformedDocumentError(f"{where}: modifiers must be an object")
    for flag, value in modifiers.items():
        if flag not in ("isStatic", "isAbstract", "isSealed") or not isinstance(
            value, bool
        ):
            raise MalformedDocumentError(f"{where}: bad modifier {flag!r}")

    comment = None
    if "comment" in record:
        raw = record["comment"]
        if not isinstance(raw, dict):
            raise MalformedDocumentError(f"{where}: comment must be an object")
        summary = _require(raw, "summary", str, where)
        remarks = raw.get("remarks")
        if remarks is not None and not isinstance(remarks, str):
            raise MalformedDocumentError(f"{where}: remarks must be a string")
        comment = DocComment(summary=summary, remarks=remarks)

    diagnostics = []
    for j, raw in enumerate(record.get("diagnostics", [])):
        diag_where = f"{where}.diagnostics[{j}]"
        if not isinstance(raw, dict):
            raise MalformedDocumentError(f"{diag_where}: must be an object")
        diagnostics.append(
            Diagnostic(
                severity=_enum(
                    Severity, _require(raw, "severity", str, diag_where), diag_where
                ),
                code=_require(raw, "code", str, diag_where),
                message=raw.get("message", ""),
            )
        )

    return Entity(
        id=entity_id,
        name=name,
        kind=kind,
        type_kind=type_kind,
        is_record=bool(record.get("isRecord", False)),
        method_kind=method_kind,
        accessibility=accessibility,
        is_static=bool(modifiers.get("isStatic", False)),
        is_abstract=bool(modifiers.get("isAbstract", False)),
        is_sealed=bool(modifiers.get("isSealed", False)),
        comment=comment,
        diagnostics=tuple(diagnostics),
    )


def parse_interchange(data: bytes | str) -> EntityGraph:
    """Decode a document and build the graph; structural errors carry context."""
    if isinstance(data, bytes):
        text = data.decode("utf-8-sig")  # tolerate a BOM on input
    else:
        text = data
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise MalformedDocumentError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise MalformedDocumentError("document root must be an object")

    version = _require(doc, "formatVersion", str, "document")
    if version != FORMAT_VERSION:
        raise UnsupportedVersionError(
            f"formatVersion {version!r} not supported (expected {FORMAT_VERSION!r})"
        )

    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        raise MalformedDocumentError("metadata must be an object")
    label = metadata.get("label", "")
    if not isinstance(label, str):
        raise MalformedDocumentError("metadata.label must be a string")

    raw_entities = _require(doc, "entities", list, "document")
    entities = [_decode_entity(record, i) for i, record in enumerate(raw_entities)]

    raw_relations = doc.get("relations", {})
    if not isinstance(raw_relations, dict):
        raise MalformedDocumentError("relations must be an object")
    relations = []
    for rel_name, pairs in raw_relations.items():
        if not isinstance(pairs, list):
            raise MalformedDocumentError(f"relations.{rel_name} must be a list")
        edges = []
        for j, pair in enumerate(pairs):
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(x, str) for x in pair)
            ):
                raise MalformedDocumentError(
                    f"relations.{rel_name}[{j}] must be [sourceId, targetId]"
                )
            edges.append((pair[0], pair[1]))
        relations.append(Relation.of(rel_name, edges))

    return build_graph(entities, relations, label=label)


def _encode_entity(entity: Entity) -> dict[str, Any]:
    record: dict[str, Any] = {
        "id": entity.id,
        "name": entity.name,
        "kind": entity.kind.value,
    }
    if entity.type_kind is not None:
        record["typeKind"] = entity.type_kind.value
    if entity.is_record:
        record["isRecord"] = True
    if entity.method_kind is not None:
        record["methodKind"] = entity.method_kind.value
    if entity.accessibility is not None:
        record["accessibility"] = entity.accessibility.value
    modifiers = {}
    if entity.is_static:
        modifiers["isStatic"] = True
    if entity.is_abstract:
        modifiers["isAbstract"] = True
    if entity.is_sealed:
        modifiers["isSealed"] = True
    if modifiers:
        record["modifiers"] = modifiers
    if entity.comment is not None:
        comment: dict[str, Any] = {"summary": entity.comment.summary}
        if entity.comment.remarks is not None:
            comment["remarks"] = entity.comment.remarks
        record["comment"] = comment
    if entity.diagnostics:
        record["diagnostics"] = [
            {"severity": d.severity.value, "code": d.code, "message": d.message}
            for d in entity.diagnostics
        ]
    return record


def write_interchange(graph: EntityGraph) -> bytes:
    """Serialize to canonical bytes; identical graphs yield identical output."""
    doc: dict[str, Any] = {
        "formatVersion": FORMAT_VERSION,
        "metadata": {"label": graph.metadata.label},
        "entities": [
            _encode_entity(graph.entities[eid]) for eid in sorted(graph.entities)
        ],
        "relations": {
            name: [[s, t] for s, t in graph.relation(name).sorted_edges()]
            for name in RELATION_NAMES
            if graph.relation(name).edges
        },
    }
    text = json.dumps(doc, ensure_ascii=False, indent=2) + "\n"
    return text.encode("utf-8")


def load_graph(path: str) -> EntityGraph:
    with open(path, "rb") as handle:
        return parse_interchange(handle.read())


def save_graph(graph: EntityGraph, path: str) -> None:
    with open(path, "wb") as handle:
        handle.write(write_interchange(graph))


def run_extractor(executable: str, source_path: str, timeout: float = 600.0) -> EntityGraph:
    """Invoke ``<executable> <source-path>`` and parse its standard output."""
    try:
        result = subprocess.run(
            [executable, source_path],
            capture_output=True,
            timeout=timeout,
        )
    except FileNotFoundError:
        raise ExtractionError(f"extractor not found: {executable!r}") from None
    except subprocess.TimeoutExpired:
        raise ExtractionError(f"extractor timed out after {timeout}s") from None
    if result.returncode != 0:
        stderr = result.stderr.decode("utf-8", "replace").strip()
        raise ExtractionError(
            f"extractor exited with status {result.returncode}"
            + (f": {stderr}" if stderr else "")
        )
    return parse_interchange(result.stdout)
