"""Radial tidy-tree layout: rings, spans, and determinism."""

from __future__ import annotations

import math
import random

import pytest

from conftest import declares, ent, random_tree_graph
from helgraph.errors import NotATreeSliceError
from helgraph.model import build_graph
from helgraph.tidytree import angular_spans, tidy_tree_layout


def star_graph(leaf_count):
    entities = [ent("S", "solution")]
    edges = []
    for i in range(leaf_count):
        entities.append(ent(f"P{i}", "project"))
        edges.append(("S", f"P{i}"))
    return build_graph(entities, [declares(*edges)])


class TestExamples:
    def test_single_root_at_origin(self):
        graph = star_graph(0)
        assert tidy_tree_layout(graph, {"S"}) == {"S": (0.0, 0.0)}

    def test_two_leaf_children_opposite(self):
        graph = star_graph(2)
        positions = tidy_tree_layout(graph, {"S", "P0", "P1"}, ring_gap=100.0)
        assert positions["S"] == (0.0, 0.0)
        for node in ("P0", "P1"):
            x, y = positions[node]
            assert math.hypot(x, y) == pytest.approx(100.0)
        a0 = math.atan2(*reversed(positions["P0"]))
        a1 = math.atan2(*reversed(positions["P1"]))
        separation = abs(a0 - a1) % (2 * math.pi)
        assert min(separation, 2 * math.pi - separation) == pytest.approx(math.pi)

    def test_spans_proportional_to_leaf_counts(self):
        # Root has child A (1 leaf) and child B whose subtree has 3 leaves.
        entities = [
            ent("S", "solution"),
            ent("A", "project"),
            ent("B", "project"),
            ent("N", "namespace"),
        ]
        edges = [("S", "A"), ("S", "B"), ("B", "N")]
        for i in range(3):
            entities.append(ent(f"T{i}", "type"))
            edges.append(("N", f"T{i}"))
        graph = build_graph(entities, [declares(*edges)])
        spans = angular_spans(graph, set(graph.entities))
        a_depth, a_start, a_end = spans["A"]
        b_depth, b_start, b_end = spans["B"]
        assert a_depth == b_depth == 1
        assert a_end - a_start == pytest.approx(math.pi / 2)  # 90 degrees
        assert b_end - b_start == pytest.approx(3 * math.pi / 2)  # 270 degrees


class TestStructure:
    def test_ring_radii_match_depth(self):
        rng = random.Random(5)
        graph = random_tree_graph(rng, max_nodes=120)
        positions = tidy_tree_layout(graph, set(graph.entities), ring_gap=80.0)
        spans = angular_spans(graph, set(graph.entities))
        for node, (x, y) in positions.items():
            depth = spans[node][0]
            assert math.hypot(x, y) == pytest.approx(80.0 * depth, abs=1e-9)

    def test_sibling_spans_disjoint(self):
        rng = random.Random(6)
        for _ in range(30):
            graph = random_tree_graph(rng, max_nodes=rng.randrange(5, 300))
            spans = angular_spans(graph, set(graph.entities))
            for node in graph.entities:
                kids = graph.children(node)
                intervals = sorted(spans[k][1:] for k in kids)
                for (s1, e1), (s2, e2) in zip(intervals, intervals[1:]):
                    assert e1 <= s2 + 1e-12

    def test_deterministic_bitwise(self):
        rng = random.Random(8)
        graph = random_tree_graph(rng, max_nodes=200)
        visible = set(graph.entities)
        first = tidy_tree_layout(graph, visible)
        second = tidy_tree_layout(graph, visible)
        assert first == second

    def test_partial_slice(self):
        graph = star_graph(3)
        positions = tidy_tree_layout(graph, {"S", "P0"})
        assert set(positions) == {"S", "P0"}

    def test_hidden_parent_rejected(self):
        graph = star_graph(1)
        with pytest.raises(NotATreeSliceError):
            tidy_tree_layout(graph, {"P0"})

    def test_multi_root_forest(self):
        graph = build_graph(
            [ent("S1", "solution"), ent("S2", "solution"), ent("P", "project")],
            [declares(("S1", "P"))],
        )
        positions = tidy_tree_layout(graph, {"S1", "S2", "P"}, ring_gap=50.0)
        # Roots land on the first ring when more than one is visible.
        for root in ("S1", "S2"):
            x, y = positions[root]
            assert math.hypot(x, y) == pytest.approx(50.0)
        assert math.hypot(*positions["P"]) == pytest.approx(100.0)

    def test_empty_visible_set(self):
        graph = star_graph(1)
        assert tidy_tree_layout(graph, set()) == {}

    def test_ten_thousand_nodes_under_a_second(self):
        import time

        rng = random.Random(99)
        graph = random_tree_graph(rng, max_nodes=10_000)
        assert len(graph) == 10_000
        start = time.perf_counter()
        positions = tidy_tree_layout(graph, set(graph.entities))
        elapsed = time.perf_counter() - start
        assert len(positions) == 10_000
        assert elapsed < 1.0
