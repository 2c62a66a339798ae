"""Radial tidy-tree seeding pass over the declares hierarchy.

Positions a parent-closed visible slice of the declares forest as a circular
dendrogram: depth-d nodes sit on the ring of radius ``ring_gap * d`` and every
subtree occupies an angular span proportional to its visible leaf count, so
sibling spans never overlap. Output is deterministic for equal inputs.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping

from .errors import NotATreeSliceError, UnknownIdError
from .model import EntityGraph

DEFAULT_RING_GAP = 120.0

TWO_PI = 2.0 * math.pi


def _visible_forest(
    graph: EntityGraph, visible: frozenset[str]
) -> tuple[list[str], dict[str, list[str]]]:
    """Roots and child lists of the visible slice; validates parent-closure."""
    children: dict[str, list[str]] = {v: [] for v in visible}
    roots: list[str] = []
    for node in sorted(visible):
        if node not in graph:
            raise UnknownIdError(node)
        parent = graph.parent(node)
        if parent is None:
            roots.append(node)
        elif parent in visible:
            children[parent].append(node)
        else:
            raise NotATreeSliceError(
                f"visible node {node!r} has a hidden declares parent {parent!r}"
            )
    return roots, children


def _leaf_counts(
    roots: list[str], children: Mapping[str, list[str]]
) -> dict[str, int]:
    counts: dict[str, int] = {}
    for root in roots:
        stack = [(root, False)]
        while stack:
            node, expanded = stack.pop()
            kids = children[node]
            if not kids:
                counts[node] = 1
            elif expanded:
                counts[node] = sum(counts[k] for k in kids)
            else:
                stack.append((node, True))
                stack.extend((k, False) for k in kids)
    return counts


def angular_spans(
    graph: EntityGraph, visible: Iterable[str]
) -> dict[str, tuple[int, float, float]]:
    """Per visible node: (depth, span start, span end) in radians.

    Exposed for diagnostics and tests; :func:`tidy_tree_layout` derives
    positions from exactly these spans.
    """
    visible_set = frozenset(visible)
    if not visible_set:
        return {}
    roots, children = _visible_forest(graph, visible_set)
    counts = _leaf_counts(roots, children)

    spans: dict[str, tuple[int, float, float]] = {}
    total_leaves = sum(counts[r] for r in roots)
    cursor = 0.0
    for root in roots:
        width = TWO_PI * counts[root] / total_leaves
        spans[root] = (0, cursor, cursor + width)
        cursor += width

    stack = list(roots)
    while stack:
        node = stack.pop()
        depth, start, end = spans[node]
        kids = children[node]
        if not kids:
            continue
        node_leaves = counts[node]
        child_cursor = start
        for kid in kids:
            width = (end - start) * counts[kid] / node_leaves
            spans[kid] = (depth + 1, child_cursor, child_cursor + width)
            child_cursor += width
            stack.append(kid)
    return spans


def tidy_tree_layout(
    graph: EntityGraph,
    visible: Iterable[str],
    ring_gap: float = DEFAULT_RING_GAP,
) -> dict[str, tuple[float, float]]:
    """Seed positions for the visible slice of the declares forest.

    A single root sits at the origin. When several roots are visible the
    forest hangs off a virtual origin instead: each root is placed at the
    angular center of its span on the first ring, and rings shift outward
    by one.
    """
    visible_set = frozenset(visible)
    spans = angular_spans(graph, visible_set)
    multi_root = sum(1 for d, _, _ in spans.values() if d == 0) > 1
    depth_shift = 1 if multi_root else 0

    positions: dict[str, tuple[float, float]] = {}
    for node, (depth, start, end) in spans.items():
        radius = ring_gap * (depth + depth_shift)
        if radius == 0.0:
            positions[node] = (0.0, 0.0)
            continue
        angle = (start + end) / 2.0
        positions[node] = (radius * math.cos(angle), radius * math.sin(angle))
    return positions
