"""Scoring and choosing among candidate generalization hierarchies.

Different hierarchies over the same attribute can retain very different
amounts of information at the same privacy level.  The heuristic here
scores a candidate by generalizing the log's value sequences to each of
its levels and measuring, per level, how much structure survives:

* ``class_count`` — the number of distinct per-trace value sequences
  (more surviving classes = more retained utility);
* ``size_balance`` — ``1 / (1 + population standard deviation)`` of the
  class sizes (evenly filled classes hide individuals better than one
  giant class next to several tiny ones).

Per-level utilities are combined into a single score with a weight per
level, and the candidate with the highest weighted total wins.  Ties go
to the shallower hierarchy, then to input order.  Totals of candidates
with different depths are compared as-is; choose weights accordingly.

When no curated hierarchy exists, ``syntactic_hierarchy`` derives one
mechanically from the observed values (dropping tokens or masking
trailing characters level by level).
"""

from __future__ import annotations

import statistics
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import UnknownAttribute
from .hierarchy import Hierarchy, validate_table
from .model import WILDCARD, EventLog, control_flow

SYNTACTIC_SCHEMES = ("token_suffix_drop", "token_prefix_drop", "char_suffix_mask")


@dataclass(frozen=True)
class UtilityProfile:
    """Per-level utilities of one candidate and their weighted total."""

    name: str
    depth: int
    per_level: tuple[float, ...]
    weights: tuple[float, ...]
    total: float


def _value_sequences(log: EventLog, hierarchy: Hierarchy) -> list[tuple[str, ...]]:
    if hierarchy.attribute is None:
        return [control_flow(trace) for trace in log.traces]
    if hierarchy.attribute not in log.schema:
        raise UnknownAttribute(
            f"log has no attribute {hierarchy.attribute!r} to score against"
        )
    return [
        tuple(event.attributes[hierarchy.attribute] for event in trace.events)
        for trace in log.traces
    ]


def level_utility(
    log: EventLog, hierarchy: Hierarchy, level: int, notion: str = "class_count"
) -> float:
    """Utility retained when this perspective is generalized to ``level``.

    Only the hierarchy's own perspective is considered: traces are
    grouped by their generalized value sequence, and the group structure
    is scored by the chosen notion.
    """
    groups: Counter[tuple[str, ...]] = Counter()
    for sequence in _value_sequences(log, hierarchy):
        groups[tuple(hierarchy.generalize(v, level) for v in sequence)] += 1
    if notion == "class_count":
        return float(len(groups))
    if notion == "size_balance":
        return 1.0 / (1.0 + statistics.pstdev(groups.values()))
    raise ValueError(f"unknown utility notion {notion!r}")


def score_hierarchy(
    log: EventLog,
    hierarchy: Hierarchy,
    weights: Sequence[float] = (1.0,),
    notion: str = "class_count",
    name: str | None = None,
) -> UtilityProfile:
    """Score one candidate over all its levels (1 through depth).

    ``weights`` gives a weight per level; a short list is extended with
    its last entry, so a single ``[1.0]`` weighs all levels equally.
    """
    if not weights:
        raise ValueError("weights must not be empty")
    padded = tuple(weights) + (weights[-1],) * max(0, hierarchy.depth - len(weights))
    padded = padded[: hierarchy.depth]
    per_level = tuple(
        level_utility(log, hierarchy, level, notion)
        for level in range(1, hierarchy.depth + 1)
    )
    total = sum(w * u for w, u in zip(padded, per_level))
    return UtilityProfile(
        name=name if name is not None else hierarchy.name,
        depth=hierarchy.depth,
        per_level=per_level,
        weights=padded,
        total=total,
    )


def select(
    log: EventLog,
    candidates: Sequence[Hierarchy],
    weights: Sequence[float] = (1.0,),
    notion: str = "class_count",
) -> tuple[Hierarchy, tuple[UtilityProfile, ...]]:
    """Pick the candidate with the highest weighted utility total.

    Returns the winner together with every candidate's profile (in input
    order) so callers can report the comparison.  Ties prefer the
    shallower hierarchy, then the earlier candidate.
    """
    if not candidates:
        raise ValueError("no candidate hierarchies given")
    profiles = tuple(
        score_hierarchy(log, h, weights, notion, name=f"candidate_{i}")
        for i, h in enumerate(candidates)
    )
    winner = min(
        range(len(candidates)),
        key=lambda i: (-profiles[i].total, candidates[i].depth, i),
    )
    return candidates[winner], profiles


def _mask_tail(value: str, masked: int) -> str:
    if masked >= len(value):
        return "-" * len(value)
    return value[: len(value) - masked] + "-" * masked


def syntactic_hierarchy(
    values: Iterable[str],
    scheme: str,
    *,
    width: int = 1,
    attribute: str | None = None,
) -> Hierarchy:
    """Derive a hierarchy mechanically from the observed values.

    Schemes: ``token_suffix_drop`` and ``token_prefix_drop`` remove one
    whitespace-separated token per level from the end or the start;
    ``char_suffix_mask`` replaces ``width`` more trailing characters with
    ``-`` per level.  A value exhausted early stays at the wildcard for
    the remaining levels.  The final level is always ``⋆``.
    """
    if scheme not in SYNTACTIC_SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}, expected one of {SYNTACTIC_SCHEMES}")
    if width < 1:
        raise ValueError("width must be at least 1")
    distinct = sorted(set(values))
    if not distinct:
        raise ValueError("cannot derive a hierarchy from no values")
    if WILDCARD in distinct:
        raise ValueError(f"the wildcard {WILDCARD!r} cannot be a leaf value")

    if scheme == "char_suffix_mask":
        steps = max((len(v) + width - 1) // width for v in distinct)
        rows = [
            tuple([v] + [_mask_tail(v, j * width) for j in range(1, steps + 1)] + [WILDCARD])
            for v in distinct
        ]
        return Hierarchy(validate_table(rows), attribute=attribute)

    depth = max(len(v.split()) for v in distinct)
    rows = []
    for v in distinct:
        tokens = v.split()
        levels = [v]
        for j in range(1, depth):
            if j >= len(tokens):
                levels.append(WILDCARD)
            elif scheme == "token_suffix_drop":
                levels.append(" ".join(tokens[: len(tokens) - j]))
            else:
                levels.append(" ".join(tokens[j:]))
        levels.append(WILDCARD)
        rows.append(tuple(levels))
    return Hierarchy(validate_table(rows), attribute=attribute)
