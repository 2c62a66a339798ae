"""Search queries: full-text, regex, and typed builder clauses.

Builder queries are conjunctions of ``property operator value`` clauses and
round-trip through a canonical textual form, e.g.::

    name contains "Service" AND memberCount >= 5 AND kind oneOf [type, method]

Strings are JSON-quoted, enum values and booleans are bare words, integers
are bare literals. Full-text search is a case-insensitive substring match on
entity names; regex mode is an unanchored ``re.search`` on names.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Union

from .errors import (
    EmptyBuilderQueryError,
    InvalidRegexError,
    OperatorTypeMismatchError,
    UnknownPropertyError,
)
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


class FilterMode(str, Enum):
    FULL_TEXT = "fullText"
    REGEX = "regex"
    BUILDER = "builder"


class ApplyMode(str, Enum):
    HIGHLIGHT = "highlight"
    ISOLATE = "isolate"


class ValueType(str, Enum):
    STRING = "string"
    INTEGER = "integer"
    BOOLEAN = "boolean"
    ENUM = "enumeration"


class PropertyId(str, Enum):
    NAME = "name"
    KIND = "kind"
    TYPE_KIND = "typeKind"
    METHOD_KIND = "methodKind"
    ACCESSIBILITY = "accessibility"
    IS_STATIC = "isStatic"
    IS_ABSTRACT = "isAbstract"
    IS_SEALED = "isSealed"
    IS_RECORD = "isRecord"
    MEMBER_COUNT = "memberCount"
    SUBTREE_HEIGHT = "subtreeHeight"
    HAS_OWN_ERROR = "hasOwnError"
    HAS_OWN_WARNING = "hasOwnWarning"
    HAS_SUBTREE_ERROR = "hasSubtreeError"
    HAS_SUBTREE_WARNING = "hasSubtreeWarning"
    COMMENT_TEXT = "commentText"
    PROJECT_NAME = "projectName"
    NAMESPACE_PATH = "namespacePath"


PROPERTY_TYPES: dict[PropertyId, ValueType] = {
    PropertyId.NAME: ValueType.STRING,
    PropertyId.KIND: ValueType.ENUM,
    PropertyId.TYPE_KIND: ValueType.ENUM,
    PropertyId.METHOD_KIND: ValueType.ENUM,
    PropertyId.ACCESSIBILITY: ValueType.ENUM,
    PropertyId.IS_STATIC: ValueType.BOOLEAN,
    PropertyId.IS_ABSTRACT: ValueType.BOOLEAN,
    PropertyId.IS_SEALED: ValueType.BOOLEAN,
    PropertyId.IS_RECORD: ValueType.BOOLEAN,
    PropertyId.MEMBER_COUNT: ValueType.INTEGER,
    PropertyId.SUBTREE_HEIGHT: ValueType.INTEGER,
    PropertyId.HAS_OWN_ERROR: ValueType.BOOLEAN,
    PropertyId.HAS_OWN_WARNING: ValueType.BOOLEAN,
    PropertyId.HAS_SUBTREE_ERROR: ValueType.BOOLEAN,
    PropertyId.HAS_SUBTREE_WARNING: ValueType.BOOLEAN,
    PropertyId.COMMENT_TEXT: ValueType.STRING,
    PropertyId.PROJECT_NAME: ValueType.STRING,
    PropertyId.NAMESPACE_PATH: ValueType.STRING,
}

_ENUM_DOMAINS: dict[PropertyId, tuple[str, ...]] = {
    PropertyId.KIND: tuple(k.value for k in EntityKind),
    PropertyId.TYPE_KIND: tuple(k.value for k in TypeKind),
    PropertyId.METHOD_KIND: tuple(k.value for k in MethodKind),
    PropertyId.ACCESSIBILITY: tuple(a.value for a in Accessibility),
}


class Operator(str, Enum):
    EQUALS = "equals"
    CONTAINS = "contains"
    STARTS_WITH = "startsWith"
    MATCHES_REGEX = "matchesRegex"
    EQ = "="
    NE = "!="
    LT = "<"
    LE = "<="
    GT = ">"
    GE = ">="
    IS = "is"
    ONE_OF = "oneOf"


OPERATORS_BY_TYPE: dict[ValueType, tuple[Operator, ...]] = {
    ValueType.STRING: (
        Operator.EQUALS,
        Operator.CONTAINS,
        Operator.STARTS_WITH,
        Operator.MATCHES_REGEX,
    ),
    ValueType.INTEGER: (
        Operator.EQ,
        Operator.NE,
        Operator.LT,
        Operator.LE,
        Operator.GT,
        Operator.GE,
    ),
    ValueType.BOOLEAN: (Operator.IS,),
    ValueType.ENUM: (Operator.EQUALS, Operator.ONE_OF),
}

ClauseValue = Union[str, int, bool, tuple[str, ...]]


@dataclass(frozen=True)
class Clause:
    property: PropertyId
    operator: Operator
    value: ClauseValue


@dataclass(frozen=True)
class FilterQuery:
    mode: FilterMode
    text: str = ""
    clauses: tuple[Clause, ...] = ()


def value_domain(prop: PropertyId) -> Optional[tuple[str, ...]]:
    """Completion values for limited-domain properties (UI support)."""
    if prop in _ENUM_DOMAINS:
        return _ENUM_DOMAINS[prop]
    if PROPERTY_TYPES[prop] is ValueType.BOOLEAN:
        return ("true", "false")
    return None


def _check_clause(clause: Clause) -> None:
    value_type = PROPERTY_TYPES[clause.property]
    if clause.operator not in OPERATORS_BY_TYPE[value_type]:
        raise OperatorTypeMismatchError(
            f"operator {clause.operator.value!r} does not apply to "
            f"{value_type.value} property {clause.property.value!r}"
        )
    value = clause.value
    if clause.operator is Operator.ONE_OF:
        if not isinstance(value, tuple) or not value:
            raise OperatorTypeMismatchError("oneOf needs a non-empty value list")
        candidates: Iterable[str] = value
    else:
        candidates = (value,)  # type: ignore[assignment]

    for item in candidates:
        if value_type is ValueType.STRING:
            if not isinstance(item, str):
                raise OperatorTypeMismatchError(
                    f"{clause.property.value} expects a string value"
                )
            if clause.operator is Operator.MATCHES_REGEX:
                try:
                    re.compile(item)
                except re.error as exc:
                    raise InvalidRegexError(f"bad regex {item!r}: {exc}") from None
        elif value_type is ValueType.INTEGER:
            if not isinstance(item, int) or isinstance(item, bool):
                raise OperatorTypeMismatchError(
                    f"{clause.property.value} expects an integer value"
                )
        elif value_type is ValueType.BOOLEAN:
            if not isinstance(item, bool):
                raise OperatorTypeMismatchError(
                    f"{clause.property.value} expects true or false"
                )
        else:
            domain = _ENUM_DOMAINS[clause.property]
            if not isinstance(item, str) or item not in domain:
                raise OperatorTypeMismatchError(
                    f"{item!r} is not one of {clause.property.value}'s values"
                )


def _serialize_value(value: ClauseValue, value_type: ValueType) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, tuple):
        return "[" + ", ".join(_serialize_value(v, value_type) for v in value) + "]"
    if value_type is ValueType.ENUM:
        return value  # enum members are bare identifiers
    return json.dumps(value, ensure_ascii=False)


def serialize_clauses(clauses: Iterable[Clause]) -> str:
    """Canonical builder text; ``parse_builder_text`` inverts it exactly."""
    return " AND ".join(
        f"{c.property.value} {c.operator.value} "
        f"{_serialize_value(c.value, PROPERTY_TYPES[c.property])}"
        for c in clauses
    )


def _split_clauses(text: str) -> list[str]:
    parts: list[str] = []
    depth = 0
    in_string = False
    escaped = False
    token_start = 0
    i = 0
    upper = text.upper()
    while i < len(text):
        ch = text[i]
        if in_string:
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                in_string = False
        elif ch == '"':
            in_string = True
        elif ch == "[":
            depth += 1
        elif ch == "]":
            depth = max(0, depth - 1)
        elif (
            depth == 0
            and upper.startswith("AND", i)
            and (i == 0 or text[i - 1].isspace())
            and (i + 3 == len(text) or text[i + 3].isspace())
        ):
            parts.append(text[token_start:i])
            i += 3
            token_start = i
            continue
        i += 1
    parts.append(text[token_start:])
    return [p.strip() for p in parts]


def _parse_value(token: str) -> ClauseValue:
    token = token.strip()
    if not token:
        raise OperatorTypeMismatchError("missing value")
    if token.startswith("["):
        if not token.endswith("]"):
            raise OperatorTypeMismatchError(f"unterminated list {token!r}")
        inner = token[1:-1].strip()
        if not inner:
            return ()
        return tuple(
            item if not item.startswith('"') else _parse_value(item)  # type: ignore
            for item in (part.strip() for part in inner.split(","))
        )
    if token.startswith('"'):
        try:
            decoded = json.loads(token)
        except json.JSONDecodeError:
            raise OperatorTypeMismatchError(f"bad string literal {token!r}") from None
        return decoded
    if token == "true":
        return True
    if token == "false":
        return False
    if re.fullmatch(r"-?\d+", token):
        return int(token)
    return token  # bare word


def parse_builder_text(text: str) -> tuple[Clause, ...]:
    """Parse the canonical clause syntax into validated clauses."""
    if not text or not text.strip():
        raise EmptyBuilderQueryError("builder query is empty")
    clauses = []
    for raw in _split_clauses(text):
        if not raw:
            raise EmptyBuilderQueryError("empty clause in builder query")
        match = re.match(
            r"^(\w+)\s+(equals|contains|startsWith|matchesRegex|is|oneOf"
            r"|=|!=|<=|>=|<|>)\s+(.+)$",
            raw,
            re.DOTALL,
        )
        if match is None:
            raise OperatorTypeMismatchError(f"cannot parse clause {raw!r}")
        prop_token, op_token, value_token = match.groups()
        try:
            prop = PropertyId(prop_token)
        except ValueError:
            raise UnknownPropertyError(f"unknown property {prop_token!r}") from None
        clause = Clause(prop, Operator(op_token), _parse_value(value_token))
        _check_clause(clause)
        clauses.append(clause)
    return tuple(clauses)


def builder_query(clauses: Iterable[Clause | tuple]) -> FilterQuery:
    """Build a validated builder query from clause objects or raw triples."""
    normalized = []
    for clause in clauses:
        if not isinstance(clause, Clause):
            prop, op, value = clause
            prop = PropertyId(prop) if not isinstance(prop, PropertyId) else prop
            op = Operator(op) if not isinstance(op, Operator) else op
            if isinstance(value, list):
                value = tuple(value)
            clause = Clause(prop, op, value)
        _check_clause(clause)
        normalized.append(clause)
    if not normalized:
        raise EmptyBuilderQueryError("builder query needs at least one clause")
    clause_tuple = tuple(normalized)
    return FilterQuery(
        mode=FilterMode.BUILDER,
        text=serialize_clauses(clause_tuple),
        clauses=clause_tuple,
    )


def parse_query(mode: FilterMode | str, text: str) -> FilterQuery:
    """Validate raw query input for any of the three search modes."""
    mode = FilterMode(mode)
    if mode is FilterMode.FULL_TEXT:
        return FilterQuery(mode=mode, text=text)
    if mode is FilterMode.REGEX:
        try:
            re.compile(text)
        except re.error as exc:
            raise InvalidRegexError(f"bad regex {text!r}: {exc}") from None
        return FilterQuery(mode=mode, text=text)
    clauses = parse_builder_text(text)
    return FilterQuery(mode=mode, text=serialize_clauses(clauses), clauses=clauses)


def _namespace_path(entity: Entity, graph: EntityGraph) -> Optional[str]:
    chain = []
    current: Optional[str] = entity.id
    while current is not None:
        node = graph.entity(current)
        if node.kind is EntityKind.NAMESPACE:
            chain.append(node.name)
        current = graph.parent(current)
    if not chain:
        return None
    return ".".join(reversed(chain))


def _project_name(entity: Entity, graph: EntityGraph) -> Optional[str]:
    current: Optional[str] = entity.id
    while current is not None:
        node = graph.entity(current)
        if node.kind is EntityKind.PROJECT:
            return node.name
        current = graph.parent(current)
    return None


def property_value(
    entity: Entity, graph: EntityGraph, prop: PropertyId
) -> Optional[ClauseValue]:
    """Current value of a filterable property; None when it does not apply."""
    if prop is PropertyId.NAME:
        return entity.name
    if prop is PropertyId.KIND:
        return entity.kind.value
    if prop is PropertyId.TYPE_KIND:
        return entity.type_kind.value if entity.type_kind else None
    if prop is PropertyId.METHOD_KIND:
        return entity.method_kind.value if entity.method_kind else None
    if prop is PropertyId.ACCESSIBILITY:
        return entity.accessibility.value if entity.accessibility else None
    if prop is PropertyId.IS_STATIC:
        return entity.is_static
    if prop is PropertyId.IS_ABSTRACT:
        return entity.is_abstract
    if prop is PropertyId.IS_SEALED:
        return entity.is_sealed
    if prop is PropertyId.IS_RECORD:
        return entity.is_record
    if prop is PropertyId.MEMBER_COUNT:
        if entity.kind is not EntityKind.TYPE:
            return None
        static, instance = member_counts(graph, entity.id)
        return static + instance
    if prop is PropertyId.SUBTREE_HEIGHT:
        return subtree_height(graph, entity.id)
    if prop is PropertyId.HAS_OWN_ERROR:
        return entity.has_diagnostic(Severity.ERROR)
    if prop is PropertyId.HAS_OWN_WARNING:
        return entity.has_diagnostic(Severity.WARNING)
    if prop is PropertyId.HAS_SUBTREE_ERROR:
        return diagnostic_rollup(graph, entity.id)[0]
    if prop is PropertyId.HAS_SUBTREE_WARNING:
        return diagnostic_rollup(graph, entity.id)[1]
    if prop is PropertyId.COMMENT_TEXT:
        if entity.comment is None:
            return None
        if entity.comment.remarks:
            return f"{entity.comment.summary}\n{entity.comment.remarks}"
        return entity.comment.summary
    if prop is PropertyId.PROJECT_NAME:
        return _project_name(entity, graph)
    if prop is PropertyId.NAMESPACE_PATH:
        return _namespace_path(entity, graph)
    raise AssertionError(f"unhandled property {prop}")


def _clause_matches(entity: Entity, graph: EntityGraph, clause: Clause) -> bool:
    actual = property_value(entity, graph, clause.property)
    if actual is None:
        return False
    op = clause.operator
    value = clause.value
    if op is Operator.EQUALS:
        return actual == value
    if op is Operator.CONTAINS:
        return isinstance(actual, str) and str(value) in actual
    if op is Operator.STARTS_WITH:
        return isinstance(actual, str) and actual.startswith(str(value))
    if op is Operator.MATCHES_REGEX:
        return isinstance(actual, str) and re.search(str(value), actual) is not None
    if op is Operator.IS:
        return actual is value or actual == value
    if op is Operator.ONE_OF:
        return actual in value  # type: ignore[operator]
    # integer comparisons
    assert isinstance(actual, int) and isinstance(value, int)
    if op is Operator.EQ:
        return actual == value
    if op is Operator.NE:
        return actual != value
    if op is Operator.LT:
        return actual < value
    if op is Operator.LE:
        return actual <= value
    if op is Operator.GT:
        return actual > value
    if op is Operator.GE:
        return actual >= value
    raise AssertionError(f"unhandled operator {op}")


def evaluate_query(
    graph: EntityGraph, eligible: Iterable[str], query: FilterQuery
) -> set[str]:
    """Ids of eligible nodes satisfying the query (conjunction for builder)."""
    matched = set()
    if query.mode is FilterMode.REGEX:
        pattern = re.compile(query.text)
    needle = query.text.lower()
    for node_id in eligible:
        entity = graph.entity(node_id)
        if query.mode is FilterMode.FULL_TEXT:
            ok = needle in entity.name.lower()
        elif query.mode is FilterMode.REGEX:
            ok = pattern.search(entity.name) is not None
        else:
            ok = all(_clause_matches(entity, graph, c) for c in query.clauses)
        if ok:
            matched.add(node_id)
    return matched


def apply_filter_mode(session, matched: set[str], mode: ApplyMode | str):
    """Apply highlight/isolate semantics to a session; returns the session."""
    mode = ApplyMode(mode)
    if mode is ApplyMode.HIGHLIGHT:
        session.highlight(matched)
    else:
        session.isolate(matched)
    return session
