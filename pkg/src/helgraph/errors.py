"""Exception types shared across the engine."""

from __future__ import annotations

from dataclasses import dataclass, field


class HelgraphError(Exception):
    """Base class for all engine errors."""


class UnknownIdError(HelgraphError, KeyError):
    """An entity id was not found in the graph."""

    def __init__(self, entity_id: str):
        super().__init__(entity_id)
        self.entity_id = entity_id

    def __str__(self) -> str:
        return f"unknown entity id: {self.entity_id!r}"


class NotATypeError(HelgraphError):
    """Operation requires a type entity but got another kind."""


@dataclass(frozen=True)
class Violation:
    """One structural-invariant violation, with enough context to locate it.

    ``code`` is a stable machine-readable identifier (e.g. ``DeclaresCycle``);
    ``subject`` names the offending entity id or edge.
    """

    code: str
    message: str
    subject: str = ""
    context: tuple[str, ...] = field(default_factory=tuple)

    def __str__(self) -> str:
        where = f" [{self.subject}]" if self.subject else ""
        return f"{self.code}{where}: {self.message}"


# Violation codes produced by graph validation.
DUPLICATE_ID = "DuplicateId"
DANGLING_EDGE = "DanglingEdge"
DECLARES_CYCLE = "DeclaresCycle"
MULTIPLE_PARENTS = "MultipleParents"
NON_SOLUTION_ROOT = "NonSolutionRoot"
ILLEGAL_MODIFIER_COMBINATION = "IllegalModifierCombination"
KIND_MISMATCH = "KindMismatch"
DEPENDS_ON_CYCLE = "DependsOnCycle"
UNKNOWN_RELATION = "UnknownRelation"
INVALID_DIAGNOSTIC = "InvalidDiagnostic"


class GraphValidationError(HelgraphError):
    """Raised by graph construction on the first violated invariant."""

    def __init__(self, violation: Violation):
        super().__init__(str(violation))
        self.violation = violation


class MalformedDocumentError(HelgraphError):
    """Interchange document is not structurally valid."""


class UnsupportedVersionError(MalformedDocumentError):
    """Interchange document declares a format version this engine cannot read."""


class ExtractionError(HelgraphError):
    """An external extractor failed to produce an interchange document."""


class NotATreeSliceError(HelgraphError):
    """Visible set does not form a parent-closed slice of the declares forest."""


class FilterError(HelgraphError):
    """Base class for query parsing failures."""


class InvalidRegexError(FilterError):
    pass


class UnknownPropertyError(FilterError):
    pass


class OperatorTypeMismatchError(FilterError):
    pass


class EmptyBuilderQueryError(FilterError):
    pass


class NotVisibleError(HelgraphError):
    """Session operation requires a visible node."""


class NoChildrenError(HelgraphError):
    """Expand called on a node without declares-children."""


class NotExpandedError(HelgraphError):
    """Collapse called on a node that is not expanded."""


class UnknownPresetError(HelgraphError):
    pass


class ConfigError(HelgraphError):
    """Engine configuration file is invalid."""


class ExportError(HelgraphError):
    """Static export could not write the bundle."""
