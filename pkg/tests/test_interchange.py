"""Interchange format: canonical writing, tolerant parsing, round-trips."""

from __future__ import annotations

import json
import os
import stat
import sys

import pytest

from conftest import declares, ent
from helgraph.errors import (
    ExtractionError,
    GraphValidationError,
    MalformedDocumentError,
    UnsupportedVersionError,
)
from helgraph.interchange import (
    parse_interchange,
    run_extractor,
    write_interchange,
)
from helgraph.model import build_graph
from helgraph.synthetic import SyntheticParams, generate_synthetic

CANONICAL_TWO_NODE = """\
{
  "formatVersion": "1.0",
  "metadata": {
    "label": "two"
  },
  "entities": [
    {
      "id": "P",
      "name": "P",
      "kind": "project"
    },
    {
      "id": "S",
      "name": "S",
      "kind": "solution"
    }
  ],
  "relations": {
    "declares": [
      [
        "S",
        "P"
      ]
    ]
  }
}
"""


def graphs_equal(a, b) -> bool:
    return (
        a.entities == b.entities
        and {n: r.edges for n, r in a.relations.items() if r.edges}
        == {n: r.edges for n, r in b.relations.items() if r.edges}
        and a.metadata.label == b.metadata.label
    )


class TestParse:
    def test_canonical_two_node_document(self):
        graph = parse_interchange(CANONICAL_TWO_NODE.encode())
        assert set(graph.entities) == {"S", "P"}
        assert graph.parent("P") == "S"
        assert graph.metadata.label == "two"

    def test_unsupported_version(self):
        doc = CANONICAL_TWO_NODE.replace('"1.0"', '"9.9"')
        with pytest.raises(UnsupportedVersionError):
            parse_interchange(doc.encode())

    def test_invalid_json_reports_position(self):
        with pytest.raises(MalformedDocumentError) as exc:
            parse_interchange(b'{"formatVersion": "1.0", "entities": [,]}')
        assert "line" in str(exc.value)

    def test_duplicate_keys_rejected(self):
        doc = '{"formatVersion": "1.0", "formatVersion": "1.0", "entities": []}'
        with pytest.raises(MalformedDocumentError):
            parse_interchange(doc.encode())

    def test_unknown_kind_rejected(self):
        doc = {
            "formatVersion": "1.0",
            "entities": [{"id": "x", "name": "x", "kind": "widget"}],
        }
        with pytest.raises(MalformedDocumentError):
            parse_interchange(json.dumps(doc).encode())

    def test_graph_violations_propagate(self):
        doc = {
            "formatVersion": "1.0",
            "entities": [
                {"id": "S", "name": "S", "kind": "solution"},
                {"id": "P", "name": "P", "kind": "project"},
            ],
            "relations": {"declares": [["S", "P"], ["S", "ghost"]]},
        }
        with pytest.raises(GraphValidationError):
            parse_interchange(json.dumps(doc).encode())

    def test_bom_tolerated_on_input(self):
        data = b"\xef\xbb\xbf" + CANONICAL_TWO_NODE.encode()
        graph = parse_interchange(data)
        assert set(graph.entities) == {"S", "P"}


class TestWrite:
    def test_write_is_deterministic(self):
        graph = generate_synthetic(SyntheticParams(seed=5))
        assert write_interchange(graph) == write_interchange(graph)

    def test_insertion_order_does_not_matter(self):
        entities = [ent("S", "solution"), ent("P", "project")]
        relation = [declares(("S", "P"))]
        forward = build_graph(entities, relation, label="two")
        backward = build_graph(list(reversed(entities)), relation, label="two")
        assert write_interchange(forward) == write_interchange(backward)

    def test_frozen_canonical_bytes(self):
        graph = build_graph(
            [ent("S", "solution"), ent("P", "project")],
            [declares(("S", "P"))],
            label="two",
        )
        assert write_interchange(graph).decode() == CANONICAL_TWO_NODE

    def test_no_byte_order_mark(self):
        graph = build_graph([ent("S", "solution")])
        assert not write_interchange(graph).startswith(b"\xef\xbb\xbf")

    def test_write_parse_canonicalizes_scrambled_documents(self):
        scrambled = {
            "metadata": {"label": "two"},
            "formatVersion": "1.0",
            "entities": [
                {"kind": "solution", "id": "S", "name": "S"},
                {"id": "P", "name": "P", "kind": "project"},
            ],
            "relations": {"declares": [["S", "P"]], "typeOf": []},
        }
        text = json.dumps(scrambled, indent=7)
        out = write_interchange(parse_interchange(text.encode()))
        assert out.decode() == CANONICAL_TWO_NODE


class TestRoundTrip:
    def test_parse_write_identity_on_synthetic_graphs(self):
        for seed in range(25):
            params = SyntheticParams(
                seed=seed,
                project_count=1 + seed % 4,
                namespace_depth=1 + seed % 3,
                types_per_namespace=1 + seed % 3,
                members_per_type=1 + seed % 5,
                diagnostic_rate=(seed % 5) / 10,
            )
            graph = generate_synthetic(params)
            blob = write_interchange(graph)
            again = parse_interchange(blob)
            assert graphs_equal(graph, again)
            assert write_interchange(again) == blob


class TestSynthetic:
    def test_seed_determinism(self):
        a = generate_synthetic(SyntheticParams(seed=1))
        b = generate_synthetic(SyntheticParams(seed=1))
        assert write_interchange(a) == write_interchange(b)

    def test_distinct_seeds_differ(self):
        a = generate_synthetic(SyntheticParams(seed=1))
        b = generate_synthetic(SyntheticParams(seed=2))
        assert write_interchange(a) != write_interchange(b)

    def test_exactly_eight_projects(self):
        graph = generate_synthetic(SyntheticParams(seed=3, project_count=8))
        projects = [e for e in graph.entities.values() if e.kind.value == "project"]
        assert len(projects) == 8

    def test_zero_diagnostic_rate(self):
        graph = generate_synthetic(SyntheticParams(seed=4, diagnostic_rate=0.0))
        assert all(not e.diagnostics for e in graph.entities.values())

    def test_param_validation(self):
        with pytest.raises(ValueError):
            SyntheticParams(seed=0, project_count=0)
        with pytest.raises(ValueError):
            SyntheticParams(seed=0, diagnostic_rate=1.5)


class TestExtractorContract:
    def _script(self, tmp_path, body: str) -> str:
        path = tmp_path / "extractor.py"
        path.write_text(f"#!{sys.executable}\n{body}")
        path.chmod(path.stat().st_mode | stat.S_IEXEC)
        return str(path)

    def test_successful_extraction(self, tmp_path):
        graph = generate_synthetic(SyntheticParams(seed=6, project_count=2))
        doc = tmp_path / "doc.helgraph.json"
        doc.write_bytes(write_interchange(graph))
        script = self._script(
            tmp_path,
            "import sys\nsys.stdout.write(open(sys.argv[1]).read())\n",
        )
        extracted = run_extractor(script, str(doc))
        assert graphs_equal(extracted, graph)

    def test_nonzero_exit_is_failure(self, tmp_path):
        script = self._script(tmp_path, "import sys\nsys.exit(3)\n")
        with pytest.raises(ExtractionError) as exc:
            run_extractor(script, "ignored")
        assert "status 3" in str(exc.value)

    def test_missing_executable(self):
        with pytest.raises(ExtractionError):
            run_extractor("/definitely/not/here", "x")
