"""Filter engine: parsing, evaluation against an independent oracle, modes."""

from __future__ import annotations

import random
import re

import pytest

from conftest import declares, ent, random_tree_graph
from helgraph.errors import (
    EmptyBuilderQueryError,
    InvalidRegexError,
    OperatorTypeMismatchError,
    UnknownPropertyError,
)
from helgraph.filters import (
    Clause,
    FilterMode,
    FilterQuery,
    Operator,
    PropertyId,
    builder_query,
    evaluate_query,
    parse_builder_text,
    parse_query,
    serialize_clauses,
    value_domain,
)
from helgraph.model import (
    DocComment,
    EntityKind,
    Severity,
    build_graph,
)


# ---------------------------------------------------------------------------
# Independent predicate oracle: re-derives every property from first
# principles (ancestor walks, child scans) without touching the engine's
# cached indexes.


def oracle_property(graph, entity, prop: PropertyId):
    def ancestors_or_self(eid):
        chain = [eid]
        while True:
            parent = graph.parent(chain[-1])
            if parent is None:
                return chain
            chain.append(parent)

    def subtree(eid):
        return [
            other
            for other in graph.entities
            if other != eid and eid in ancestors_or_self(other)[1:]
        ]

    name = prop.value
    if name == "name":
        return entity.name
    if name == "kind":
        return entity.kind.value
    if name == "typeKind":
        return entity.type_kind.value if entity.type_kind else None
    if name == "methodKind":
        return entity.method_kind.value if entity.method_kind else None
    if name == "accessibility":
        return entity.accessibility.value if entity.accessibility else None
    if name in ("isStatic", "isAbstract", "isSealed", "isRecord"):
        return getattr(
            entity,
            {
                "isStatic": "is_static",
                "isAbstract": "is_abstract",
                "isSealed": "is_sealed",
                "isRecord": "is_record",
            }[name],
        )
    if name == "memberCount":
        if entity.kind is not EntityKind.TYPE:
            return None
        return sum(
            1
            for c in graph.children(entity.id)
            if graph.entity(c).kind.value in ("field", "method", "property", "event")
        )
    if name == "subtreeHeight":
        def height(eid):
            kids = graph.children(eid)
            return 0 if not kids else 1 + max(height(k) for k in kids)

        return height(entity.id)
    if name == "hasOwnError":
        return any(d.severity is Severity.ERROR for d in entity.diagnostics)
    if name == "hasOwnWarning":
        return any(d.severity is Severity.WARNING for d in entity.diagnostics)
    if name in ("hasSubtreeError", "hasSubtreeWarning"):
        severity = Severity.ERROR if name == "hasSubtreeError" else Severity.WARNING
        return any(
            any(d.severity is severity for d in graph.entity(o).diagnostics)
            for o in subtree(entity.id)
        )
    if name == "commentText":
        if entity.comment is None:
            return None
        text = entity.comment.summary
        if entity.comment.remarks:
            text += "\n" + entity.comment.remarks
        return text
    if name == "projectName":
        for eid in ancestors_or_self(entity.id):
            node = graph.entity(eid)
            if node.kind is EntityKind.PROJECT:
                return node.name
        return None
    if name == "namespacePath":
        names = [
            graph.entity(eid).name
            for eid in reversed(ancestors_or_self(entity.id))
            if graph.entity(eid).kind is EntityKind.NAMESPACE
        ]
        return ".".join(names) if names else None
    raise AssertionError(name)


def oracle_clause(graph, entity, clause: Clause) -> bool:
    actual = oracle_property(graph, entity, clause.property)
    if actual is None:
        return False
    op, value = clause.operator, clause.value
    table = {
        Operator.EQUALS: lambda: actual == value,
        Operator.CONTAINS: lambda: value in actual,
        Operator.STARTS_WITH: lambda: actual.startswith(value),
        Operator.MATCHES_REGEX: lambda: re.search(value, actual) is not None,
        Operator.IS: lambda: actual == value,
        Operator.ONE_OF: lambda: actual in value,
        Operator.EQ: lambda: actual == value,
        Operator.NE: lambda: actual != value,
        Operator.LT: lambda: actual < value,
        Operator.LE: lambda: actual <= value,
        Operator.GT: lambda: actual > value,
        Operator.GE: lambda: actual >= value,
    }
    return table[op]()


def oracle_evaluate(graph, eligible, query: FilterQuery) -> set[str]:
    out = set()
    for eid in eligible:
        entity = graph.entity(eid)
        if query.mode is FilterMode.FULL_TEXT:
            ok = query.text.lower() in entity.name.lower()
        elif query.mode is FilterMode.REGEX:
            ok = re.search(query.text, entity.name) is not None
        else:
            ok = all(oracle_clause(graph, entity, c) for c in query.clauses)
        if ok:
            out.add(eid)
    return out


def random_clause(rng: random.Random, graph) -> Clause:
    prop = rng.choice(list(PropertyId))
    from helgraph.filters import OPERATORS_BY_TYPE, PROPERTY_TYPES, ValueType

    value_type = PROPERTY_TYPES[prop]
    op = rng.choice(OPERATORS_BY_TYPE[value_type])
    entities = list(graph.entities.values())
    if value_type is ValueType.STRING:
        if op is Operator.MATCHES_REGEX:
            value = rng.choice(["Ser", "^[A-Z]", "a.e", "Manager$", "\\d"])
        else:
            sample = rng.choice(entities).name
            value = sample[: rng.randrange(0, len(sample) + 1)] or "a"
    elif value_type is ValueType.INTEGER:
        value = rng.randrange(0, 6)
    elif value_type is ValueType.BOOLEAN:
        value = rng.random() < 0.5
    else:
        domain = value_domain(prop)
        if op is Operator.ONE_OF:
            count = rng.randrange(1, min(3, len(domain)) + 1)
            value = tuple(rng.sample(domain, count))
        else:
            value = rng.choice(domain)
    return Clause(prop, op, value)


class TestParseQuery:
    def test_full_text_wraps_text(self):
        query = parse_query("fullText", "Service")
        assert query.mode is FilterMode.FULL_TEXT
        assert query.text == "Service"

    def test_invalid_regex(self):
        with pytest.raises(InvalidRegexError):
            parse_query("regex", "(")

    def test_operator_type_mismatch(self):
        with pytest.raises(OperatorTypeMismatchError):
            builder_query([("memberCount", "contains", 5)])

    def test_unknown_property(self):
        with pytest.raises(UnknownPropertyError):
            parse_builder_text('flavor equals "vanilla"')

    def test_empty_builder_query(self):
        with pytest.raises(EmptyBuilderQueryError):
            parse_query("builder", "   ")
        with pytest.raises(EmptyBuilderQueryError):
            builder_query([])

    def test_bad_enum_value_rejected(self):
        with pytest.raises(OperatorTypeMismatchError):
            builder_query([("kind", "equals", "widget")])

    def test_regex_clause_value_validated(self):
        with pytest.raises(InvalidRegexError):
            builder_query([("name", "matchesRegex", "(")])

    def test_builder_text_round_trip(self):
        text = 'name contains "Service" AND memberCount >= 5 AND isStatic is true'
        clauses = parse_builder_text(text)
        assert serialize_clauses(clauses) == text
        assert parse_builder_text(serialize_clauses(clauses)) == clauses

    def test_one_of_round_trip(self):
        query = builder_query([("kind", "oneOf", ("type", "method"))])
        assert query.text == "kind oneOf [type, method]"
        assert parse_builder_text(query.text) == query.clauses

    def test_quoted_and_keyword_inside_string(self):
        text = 'name contains "Save AND Load"'
        clauses = parse_builder_text(text)
        assert clauses == (Clause(PropertyId.NAME, Operator.CONTAINS, "Save AND Load"),)


def service_graph():
    return build_graph(
        [
            ent("S", "solution"),
            ent("P", "project", name="Media.Core"),
            ent("N", "namespace", name="Services"),
            ent("T1", "type", name="ProjectService"),
            ent(
                "T2",
                "type",
                name="UserStore",
                is_record=True,
                comment=DocComment("Persists users.", "Thread safe."),
            ),
            ent("T3", "type", name="Helper", type_kind="struct"),
        ],
        [declares(("S", "P"), ("P", "N"), ("N", "T1"), ("N", "T2"), ("N", "T3"))],
    )


class TestEvaluate:
    def test_full_text_case_insensitive(self):
        graph = service_graph()
        query = parse_query("fullText", "projectservice")
        assert evaluate_query(graph, graph.entities, query) == {"T1"}

    def test_regex_on_names(self):
        graph = service_graph()
        query = parse_query("regex", "^User")
        assert evaluate_query(graph, graph.entities, query) == {"T2"}

    def test_result_restricted_to_eligible(self):
        graph = service_graph()
        query = parse_query("fullText", "e")  # matches almost everything
        restricted = evaluate_query(graph, {"T1", "T2"}, query)
        assert restricted <= {"T1", "T2"}

    def test_record_class_conjunction(self):
        graph = service_graph()
        query = builder_query(
            [("typeKind", "equals", "class"), ("isRecord", "is", True)]
        )
        assert evaluate_query(graph, graph.entities, query) == {"T2"}

    def test_subtree_error_matches_ancestors(self):
        from helgraph.model import Diagnostic

        graph = build_graph(
            [
                ent("S", "solution"),
                ent("P", "project"),
                ent("N", "namespace"),
                ent(
                    "T",
                    "type",
                    diagnostics=(Diagnostic(Severity.ERROR, "HG1"),),
                ),
            ],
            [declares(("S", "P"), ("P", "N"), ("N", "T"))],
        )
        query = builder_query([("hasSubtreeError", "is", True)])
        assert evaluate_query(graph, graph.entities, query) == {"S", "P", "N"}

    def test_comment_text_covers_summary_and_remarks(self):
        graph = service_graph()
        in_summary = builder_query([("commentText", "contains", "Persists")])
        in_remarks = builder_query([("commentText", "contains", "Thread safe")])
        assert evaluate_query(graph, graph.entities, in_summary) == {"T2"}
        assert evaluate_query(graph, graph.entities, in_remarks) == {"T2"}

    def test_namespace_path_and_project_name(self):
        graph = service_graph()
        by_path = builder_query([("namespacePath", "equals", "Services")])
        assert "T1" in evaluate_query(graph, graph.entities, by_path)
        by_project = builder_query([("projectName", "startsWith", "Media")])
        matched = evaluate_query(graph, graph.entities, by_project)
        assert {"P", "N", "T1", "T2", "T3"} == matched

    def test_matches_oracle_on_random_pairs(self):
        rng = random.Random(77)
        for _ in range(60):
            graph = random_tree_graph(
                rng, max_nodes=rng.randrange(10, 80), diagnostic_rate=0.2
            )
            eligible = set(graph.entities)
            mode = rng.choice(list(FilterMode))
            if mode is FilterMode.FULL_TEXT:
                query = parse_query(mode, rng.choice(["a", "Ser", "n1", "Z"]))
            elif mode is FilterMode.REGEX:
                query = parse_query(mode, rng.choice(["^n", "[0-9]$", "a.e"]))
            else:
                clauses = [
                    random_clause(rng, graph) for _ in range(rng.randrange(1, 4))
                ]
                query = builder_query(clauses)
            assert evaluate_query(graph, eligible, query) == oracle_evaluate(
                graph, eligible, query
            )

    def test_conjunction_monotonicity(self):
        rng = random.Random(88)
        for _ in range(40):
            graph = random_tree_graph(rng, max_nodes=60)
            eligible = set(graph.entities)
            clauses = [random_clause(rng, graph)]
            before = evaluate_query(graph, eligible, builder_query(clauses))
            clauses.append(random_clause(rng, graph))
            after = evaluate_query(graph, eligible, builder_query(clauses))
            assert after <= before


class TestValueDomains:
    def test_enum_domains_exposed(self):
        assert "class" in value_domain(PropertyId.TYPE_KIND)
        assert "protectedInternal" in value_domain(PropertyId.ACCESSIBILITY)
        assert value_domain(PropertyId.IS_STATIC) == ("true", "false")
        assert value_domain(PropertyId.NAME) is None
