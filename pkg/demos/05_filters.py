"""
Three ways to search a codebase
===============================

Full-text matches entity names case-insensitively, regex gives precision,
and the builder composes typed clauses with AND. Builder queries have a
canonical textual form that survives a parse/serialize round trip, which is
what the web viewer sends over the session API.
"""

from helgraph import (
    SyntheticParams,
    builder_query,
    evaluate_query,
    generate_synthetic,
    parse_query,
    serialize_clauses,
)

graph = generate_synthetic(SyntheticParams(seed=11, project_count=4, diagnostic_rate=0.2))
everything = set(graph.entities)


def show(label, matched):
    names = sorted(graph.entity(m).name for m in matched)
    preview = ", ".join(names[:6]) + (" ..." if len(names) > 6 else "")
    print(f"{label:52s} {len(matched):4d}  {preview}")


show("fullText 'service'", evaluate_query(
    graph, everything, parse_query("fullText", "service")))

show("regex '^I[A-Z]' (interfaces by convention)", evaluate_query(
    graph, everything, parse_query("regex", "^I[A-Z]")))

q = builder_query([("kind", "equals", "type"), ("isStatic", "is", True)])
show(f"builder: {q.text}", evaluate_query(graph, everything, q))

q = builder_query([("hasSubtreeError", "is", True)])
show(f"builder: {q.text}", evaluate_query(graph, everything, q))

q = builder_query([("memberCount", ">=", 4), ("typeKind", "oneOf", ("class", "struct"))])
show(f"builder: {q.text}", evaluate_query(graph, everything, q))

q = builder_query([("commentText", "contains", "lifecycle")])
show(f"builder: {q.text}", evaluate_query(graph, everything, q))

# The canonical text form is stable under parsing.
text = 'name contains "Service" AND memberCount >= 2 AND isStatic is false'
reparsed = parse_query("builder", text)
assert serialize_clauses(reparsed.clauses) == text
print(f"\nround-tripped builder text: {text}")
