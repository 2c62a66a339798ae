"""Entity-graph model: construction, validation, and subtree queries."""

from __future__ import annotations

import random

import pytest

from conftest import declares, ent, random_tree_graph, solution_project_graph
from helgraph import errors
from helgraph.errors import GraphValidationError, NotATypeError, UnknownIdError
from helgraph.model import (
    Diagnostic,
    EntityKind,
    Relation,
    Severity,
    build_graph,
    diagnostic_rollup,
    member_counts,
    subtree_height,
    validate,
)


class TestBuildGraph:
    def test_single_solution_no_edges(self):
        graph = build_graph([ent("S", "solution")])
        assert len(graph) == 1
        assert graph.roots == ("S",)
        assert graph.relation("declares").edges == frozenset()

    def test_smallest_tree(self):
        graph = solution_project_graph()
        assert graph.children("S") == ("P",)
        assert graph.parent("P") == "S"

    def test_declares_cycle_rejected(self):
        with pytest.raises(GraphValidationError) as exc:
            build_graph(
                [ent("A", "solution"), ent("B", "project")],
                [declares(("A", "B"), ("B", "A"))],
            )
        assert exc.value.violation.code in (
            errors.DECLARES_CYCLE,
            errors.KIND_MISMATCH,  # B->A also violates kind hierarchy
        )

    def test_pure_cycle_is_reported_as_cycle(self):
        # Namespaces may nest, so this cycle violates nothing but acyclicity.
        with pytest.raises(GraphValidationError) as exc:
            build_graph(
                [
                    ent("S", "solution"),
                    ent("P", "project"),
                    ent("N1", "namespace"),
                    ent("N2", "namespace"),
                ],
                [declares(("S", "P"), ("P", "N1"), ("N1", "N2"), ("N2", "N1"))],
            )
        assert exc.value.violation.code in (
            errors.DECLARES_CYCLE,
            errors.MULTIPLE_PARENTS,
        )

    def test_dangling_edge(self):
        with pytest.raises(GraphValidationError) as exc:
            build_graph([ent("S", "solution")], [declares(("S", "ghost"))])
        assert exc.value.violation.code == errors.DANGLING_EDGE

    def test_duplicate_id(self):
        with pytest.raises(GraphValidationError) as exc:
            build_graph([ent("S", "solution"), ent("S", "solution")])
        assert exc.value.violation.code == errors.DUPLICATE_ID

    def test_abstract_sealed_conflict(self):
        with pytest.raises(GraphValidationError) as exc:
            build_graph(
                [ent("S", "solution")]
                + [ent("P", "project"), ent("N", "namespace")]
                + [ent("T", "type", is_abstract=True, is_sealed=True)],
                [declares(("S", "P"), ("P", "N"), ("N", "T"))],
            )
        assert exc.value.violation.code == errors.ILLEGAL_MODIFIER_COMBINATION

    def test_multiple_solutions_allowed(self):
        graph = build_graph([ent("S1", "solution"), ent("S2", "solution")])
        assert graph.roots == ("S1", "S2")


class TestValidate:
    def _flat(self, entities, relations=()):
        return {v.code for v in validate(entities, list(relations))}

    def test_valid_graph_has_no_violations(self):
        rng = random.Random(7)
        graph = random_tree_graph(rng, max_nodes=120)
        assert validate(graph) == []

    def test_depends_on_cycle(self):
        entities = [
            ent("S", "solution"),
            ent("P1", "project"),
            ent("P2", "project"),
        ]
        relations = [
            declares(("S", "P1"), ("S", "P2")),
            Relation.of("dependsOn", [("P1", "P2"), ("P2", "P1")]),
        ]
        assert errors.DEPENDS_ON_CYCLE in self._flat(entities, relations)

    def test_multiple_parents(self):
        entities = [
            ent("S1", "solution"),
            ent("S2", "solution"),
            ent("P", "project"),
        ]
        relations = [declares(("S1", "P"), ("S2", "P"))]
        assert errors.MULTIPLE_PARENTS in self._flat(entities, relations)

    def test_non_solution_root(self):
        assert errors.NON_SOLUTION_ROOT in self._flat([ent("P", "project")])

    def test_type_kind_required_on_types(self):
        bad = ent("T", "type")
        object.__setattr__(bad, "type_kind", None)
        assert errors.KIND_MISMATCH in self._flat([bad])

    def test_depends_on_endpoint_kinds(self):
        entities = [
            ent("S", "solution"),
            ent("P", "project"),
            ent("N", "namespace"),
        ]
        relations = [
            declares(("S", "P"), ("P", "N")),
            Relation.of("dependsOn", [("P", "N")]),
        ]
        assert errors.KIND_MISMATCH in self._flat(entities, relations)

    def test_unknown_relation_name(self):
        entities = [ent("S", "solution")]
        relations = [Relation.of("overrides", [])]
        assert errors.UNKNOWN_RELATION in self._flat(entities, relations)


def chain_graph():
    """solution -> project -> namespace -> type."""
    return build_graph(
        [
            ent("S", "solution"),
            ent("P", "project"),
            ent("N", "namespace"),
            ent("T", "type"),
        ],
        [declares(("S", "P"), ("P", "N"), ("N", "T"))],
    )


class TestSubtreeHeight:
    def test_leaf_is_zero(self):
        graph = chain_graph()
        assert subtree_height(graph, "T") == 0

    def test_chain_height(self):
        graph = chain_graph()
        assert subtree_height(graph, "S") == 3
        assert subtree_height(graph, "P") == 2

    def test_one_plus_max_rule(self):
        # Children of S have heights 0 (package leaf) and 2 (project chain).
        graph = build_graph(
            [
                ent("S", "solution"),
                ent("K", "package"),
                ent("P", "project"),
                ent("N", "namespace"),
                ent("T", "type"),
            ],
            [declares(("S", "K"), ("S", "P"), ("P", "N"), ("N", "T"))],
        )
        assert subtree_height(graph, "K") == 0
        assert subtree_height(graph, "P") == 2
        assert subtree_height(graph, "S") == 3

    def test_unknown_id(self):
        with pytest.raises(UnknownIdError):
            subtree_height(chain_graph(), "nope")

    def test_against_recursive_oracle(self):
        def oracle(graph, node):
            kids = graph.children(node)
            if not kids:
                return 0
            return 1 + max(oracle(graph, k) for k in kids)

        rng = random.Random(42)
        for _ in range(25):
            graph = random_tree_graph(rng, max_nodes=rng.randrange(2, 500))
            for node in graph.entities:
                assert subtree_height(graph, node) == oracle(graph, node)


def type_with_members(members):
    """members: list of (kind, is_static)."""
    entities = [
        ent("S", "solution"),
        ent("P", "project"),
        ent("N", "namespace"),
        ent("T", "type"),
    ]
    edges = [("S", "P"), ("P", "N"), ("N", "T")]
    for i, (kind, is_static) in enumerate(members):
        mid = f"m{i}"
        if kind == "type":
            entities.append(ent(mid, "type", is_static=is_static))
        else:
            entities.append(ent(mid, kind, is_static=is_static))
        edges.append(("T", mid))
    return build_graph(entities, [declares(*edges)])


class TestMemberCounts:
    def test_empty_type(self):
        graph = type_with_members([])
        assert member_counts(graph, "T") == (0, 0)

    def test_three_static_fields_one_instance_method(self):
        graph = type_with_members(
            [("field", True), ("field", True), ("field", True), ("method", False)]
        )
        assert member_counts(graph, "T") == (3, 1)

    def test_nested_type_is_not_a_member(self):
        graph = type_with_members([("type", False)])
        assert member_counts(graph, "T") == (0, 0)

    def test_not_a_type(self):
        graph = chain_graph()
        with pytest.raises(NotATypeError):
            member_counts(graph, "N")

    def test_sum_matches_member_children(self):
        rng = random.Random(9)
        for _ in range(20):
            graph = random_tree_graph(rng, max_nodes=200)
            for eid, entity in graph.entities.items():
                if entity.kind is not EntityKind.TYPE:
                    continue
                static, instance = member_counts(graph, eid)
                member_kids = [
                    k
                    for k in graph.children(eid)
                    if graph.entity(k).kind.value
                    in ("field", "method", "property", "event")
                ]
                assert static + instance == len(member_kids)


def diag(severity):
    return (Diagnostic(Severity(severity), "HG001", "synthetic"),)


class TestDiagnosticRollup:
    def test_own_diagnostics_excluded(self):
        graph = build_graph(
            [
                ent("S", "solution"),
                ent("P", "project", diagnostics=diag("error")),
            ],
            [declares(("S", "P"))],
        )
        assert diagnostic_rollup(graph, "P") == (False, False)

    def test_grandchild_error_reaches_solution(self):
        graph = build_graph(
            [
                ent("S", "solution"),
                ent("P", "project"),
                ent("N", "namespace"),
                ent("T", "type"),
                ent("M", "method", diagnostics=diag("error")),
            ],
            [declares(("S", "P"), ("P", "N"), ("N", "T"), ("T", "M"))],
        )
        assert diagnostic_rollup(graph, "S") == (True, False)

    def test_warning_and_error_both_roll_up(self):
        graph = build_graph(
            [
                ent("S", "solution"),
                ent("P", "project"),
                ent("N", "namespace"),
                ent("T1", "type", diagnostics=diag("warning")),
                ent("T2", "type", diagnostics=diag("error")),
            ],
            [declares(("S", "P"), ("P", "N"), ("N", "T1"), ("N", "T2"))],
        )
        assert diagnostic_rollup(graph, "S") == (True, True)
        assert diagnostic_rollup(graph, "P") == (True, True)

    def test_info_never_rolls_up(self):
        graph = build_graph(
            [
                ent("S", "solution"),
                ent("P", "project", diagnostics=diag("info")),
            ],
            [declares(("S", "P"))],
        )
        assert diagnostic_rollup(graph, "S") == (False, False)

    def test_against_dfs_oracle(self):
        def oracle(graph, node):
            err = warn = False
            for descendant in graph.descendants(node):
                entity = graph.entity(descendant)
                err = err or entity.has_diagnostic(Severity.ERROR)
                warn = warn or entity.has_diagnostic(Severity.WARNING)
            return err, warn

        rng = random.Random(1234)
        for _ in range(25):
            graph = random_tree_graph(
                rng, max_nodes=rng.randrange(2, 500), diagnostic_rate=0.2
            )
            for node in graph.entities:
                assert diagnostic_rollup(graph, node) == oracle(graph, node)
