"""Generalization hierarchies and their application to event logs.

A hierarchy is a rectangular table, one row per leaf value.  Column 0
holds the leaf, each following column the value one level more general,
and the last column is always the wildcard root ``⋆``.  A value may stay
unchanged across consecutive columns ("suppress late"), and the same
label may appear at several levels; lookup is therefore *row-based*:
generalizing a leaf to level ``j`` returns column ``j`` of that leaf's
row.

Levels are global per perspective: level 0 is the raw data, level
``depth`` maps everything to ``⋆``.  The precision weight ``alpha(v)``
counts how many leaves generalize to (or through) ``v``; it drives the
handover-quality metrics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import (
    DuplicateLeaf,
    HierarchyFormatError,
    InconsistentDepth,
    MissingRoot,
    NonFunctionalLevel,
    UnknownValue,
)
from .model import MISSING, WILDCARD, Event, EventLog, Trace


@dataclass(frozen=True)
class HierarchyTable:
    """A validated generalization table (rows of equal length ending in ``⋆``)."""

    rows: tuple[tuple[str, ...], ...]

    @property
    def depth(self) -> int:
        return len(self.rows[0]) - 1

    @property
    def leaves(self) -> tuple[str, ...]:
        return tuple(row[0] for row in self.rows)


def validate_table(rows: Iterable[Sequence[str]]) -> HierarchyTable:
    """Check the structural rules and return the table.

    Raises the specific :class:`~pmdg.errors.HierarchyFormatError`
    subclass naming the first rule violated: uniform row length, wildcard
    root in the last column, unique leaves, and functional consistency
    (equal values at level ``j`` must stay equal at level ``j+1``).
    """
    normalized = tuple(tuple(cell.strip() for cell in row) for row in rows)
    if not normalized:
        raise HierarchyFormatError("hierarchy table has no rows")
    width = len(normalized[0])
    if width < 2:
        raise InconsistentDepth(
            "hierarchy rows need at least a leaf column and the wildcard root"
        )
    for number, row in enumerate(normalized, start=1):
        if len(row) != width:
            raise InconsistentDepth(
                f"row {number} has {len(row)} cells, expected {width}"
            )
        if row[-1] != WILDCARD:
            raise MissingRoot(
                f"row {number} ends in {row[-1]!r}, expected the wildcard {WILDCARD!r}"
            )
    seen_leaves: set[str] = set()
    for number, row in enumerate(normalized, start=1):
        if row[0] == WILDCARD:
            raise HierarchyFormatError(
                f"row {number} uses the wildcard {WILDCARD!r} as a leaf"
            )
        if row[0] in seen_leaves:
            raise DuplicateLeaf(f"leaf {row[0]!r} appears in more than one row")
        seen_leaves.add(row[0])
    for level in range(width - 1):
        parent_of: dict[str, str] = {}
        for row in normalized:
            value, parent = row[level], row[level + 1]
            known = parent_of.setdefault(value, parent)
            if known != parent:
                raise NonFunctionalLevel(
                    f"value {value!r} at level {level} maps to both {known!r} "
                    f"and {parent!r}"
                )
    return HierarchyTable(rows=normalized)


class Hierarchy:
    """A generalization hierarchy for one perspective.

    ``attribute`` names the log attribute the hierarchy applies to;
    ``None`` marks a hierarchy over activity labels (the control-flow
    perspective).
    """

    def __init__(self, table: HierarchyTable, attribute: str | None = None):
        self.table = table
        self.attribute = attribute
        self.depth = table.depth
        self.leaves = table.leaves
        self._row_by_leaf = {row[0]: row for row in table.rows}
        counts: dict[str, set[str]] = {}
        for row in table.rows:
            for value in row:
                counts.setdefault(value, set()).add(row[0])
        self._alpha = {value: len(leaves) for value, leaves in counts.items()}

    @classmethod
    def from_rows(
        cls, rows: Iterable[Sequence[str]], attribute: str | None = None
    ) -> "Hierarchy":
        return cls(validate_table(rows), attribute=attribute)

    @property
    def name(self) -> str:
        return self.attribute if self.attribute is not None else "activity"

    def generalize(self, value: str, level: int) -> str:
        """Map a leaf value to its level-``level`` generalization.

        The wildcard stays a wildcard at any level.  The missing-value
        literal ``⊥`` is accepted even when no row defines it: gaps in
        the data carry no information to generalize away, so ``⊥`` stays
        itself below the root and becomes ``⋆`` only at the top level.
        """
        if not 0 <= level <= self.depth:
            raise ValueError(
                f"level {level} out of range 0..{self.depth} for {self.name}"
            )
        if value == WILDCARD:
            return WILDCARD
        row = self._row_by_leaf.get(value)
        if row is not None:
            return row[level]
        if value == MISSING:
            return MISSING if level < self.depth else WILDCARD
        raise UnknownValue(f"{value!r} is not a leaf of the {self.name} hierarchy")

    def alpha(self, value: str) -> int:
        """Number of leaves whose generalization path contains ``value``.

        ``alpha(⋆)`` equals the number of leaves, i.e. the size of the
        attribute domain; ``alpha`` of a leaf is 1.  The missing-value
        literal counts as a single-leaf path of its own unless the table
        defines it explicitly.
        """
        if value == WILDCARD:
            return len(self.leaves)
        found = self._alpha.get(value)
        if found is not None:
            return found
        if value == MISSING:
            return 1
        raise UnknownValue(f"{value!r} does not occur in the {self.name} hierarchy")


@dataclass(frozen=True)
class LevelVector:
    """One node of the generalization lattice: a global level for the
    activity perspective plus one per generalized attribute."""

    activity_level: int = 0
    attribute_levels: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "attribute_levels", MappingProxyType(dict(self.attribute_levels))
        )
        if self.activity_level < 0 or any(
            lvl < 0 for lvl in self.attribute_levels.values()
        ):
            raise ValueError("generalization levels must be non-negative")

    @property
    def cost(self) -> int:
        """Total generalization applied; the lattice search minimizes this."""
        return self.activity_level + sum(self.attribute_levels.values())

    def covers(self, other: "LevelVector") -> bool:
        """Component-wise >= comparison over the same attribute set."""
        if set(self.attribute_levels) != set(other.attribute_levels):
            raise ValueError("level vectors cover different attribute sets")
        return self.activity_level >= other.activity_level and all(
            self.attribute_levels[a] >= other.attribute_levels[a]
            for a in self.attribute_levels
        )

    def as_dict(self) -> dict:
        return {
            "activity": self.activity_level,
            "attributes": dict(sorted(self.attribute_levels.items())),
        }


def apply_to_log(
    log: EventLog,
    levels: LevelVector,
    activity_hierarchy: Hierarchy,
    attribute_hierarchies: Mapping[str, Hierarchy] | None = None,
) -> EventLog:
    """Generalize a log to the given lattice node.

    Every activity label is replaced by its generalization at the
    vector's activity level, and every value of an attribute listed in
    ``levels.attribute_levels`` by its generalization at that attribute's
    level.  Attributes without an entry are left untouched.

    An event whose activity generalizes to ``⋆`` is masked entirely: all
    its attribute values become ``⋆`` as well, whatever their own level
    says.  Once the control flow no longer admits that anything specific
    happened at a position, keeping a concrete role or location there
    would leak exactly the information the wildcard was meant to hide.
    Masked events keep their ``origin_index``; inserted wildcard events
    pass through unchanged.
    """
    attribute_hierarchies = attribute_hierarchies or {}
    for attr in levels.attribute_levels:
        if attr not in log.schema:
            raise ValueError(f"level given for unknown attribute {attr!r}")
        if attr not in attribute_hierarchies:
            raise ValueError(f"no hierarchy supplied for attribute {attr!r}")

    traces = []
    for trace in log.traces:
        events = []
        for event in trace.events:
            if event.is_wildcard:
                events.append(event)
                continue
            activity = activity_hierarchy.generalize(
                event.activity, levels.activity_level
            )
            values = dict(event.attributes)
            if activity == WILDCARD:
                values = {attr: WILDCARD for attr in values}
            else:
                for attr, level in levels.attribute_levels.items():
                    values[attr] = attribute_hierarchies[attr].generalize(
                        values[attr], level
                    )
            events.append(Event(activity, values, origin_index=event.origin_index))
        traces.append(Trace(case_id=trace.case_id, events=tuple(events)))
    return EventLog(schema=log.schema, traces=tuple(traces))
