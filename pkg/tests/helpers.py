"""Shared fixtures builders and independent oracles for the test suite.

The random generators are driven by explicit ``random.Random`` instances
so every test run sees identical data.  The oracles deliberately
re-derive expected results by brute force (exhaustive enumeration,
independent grouping logic) rather than calling the code under test.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter

from pmdg import (
    WILDCARD,
    Event,
    EventLog,
    Hierarchy,
    LevelVector,
    Trace,
)


def clinic_hierarchies() -> tuple[Hierarchy, Hierarchy, Hierarchy]:
    """Activity, role, and location hierarchies of the two-case clinic log."""
    activity = Hierarchy.from_rows(
        [
            ("Register", "Register", WILDCARD),
            ("Vitals", WILDCARD, WILDCARD),
            ("Consultation", "Consultation", WILDCARD),
            ("CT Scan", "Radiology Scan", WILDCARD),
            ("MRI Scan", "Radiology Scan", WILDCARD),
        ]
    )
    role = Hierarchy.from_rows(
        [
            ("Admin", "Admin", WILDCARD),
            ("GP", "Medical Staff", WILDCARD),
            ("CA", "Medical Staff", WILDCARD),
        ],
        attribute="role",
    )
    location = Hierarchy.from_rows(
        [
            ("Day Clinic", "On Site", WILDCARD),
            ("Hospital", "On Site", WILDCARD),
        ],
        attribute="location",
    )
    return activity, role, location


def clinic_log(with_location: bool = False) -> EventLog:
    """Two outpatient cases that differ in one mid-trace event."""
    rows_07 = [
        ("Register", "Admin", "Day Clinic"),
        ("Vitals", "GP", "Day Clinic"),
        ("Consultation", "GP", "Day Clinic"),
        ("CT Scan", "CA", "Hospital"),
    ]
    rows_08 = [
        ("Register", "Admin", "Hospital"),
        ("Consultation", "CA", "Hospital"),
        ("MRI Scan", "CA", "Hospital"),
    ]
    schema = ("role", "location") if with_location else ("role",)

    def build(case_id, rows):
        events = []
        for activity, role, location in rows:
            values = {"role": role}
            if with_location:
                values["location"] = location
            events.append(Event(activity, values))
        return Trace(case_id, tuple(events))

    return EventLog(
        schema=schema, traces=(build("07", rows_07), build("08", rows_08))
    )


def random_hierarchy(
    rng: random.Random,
    n_leaves: int,
    depth: int,
    attribute: str | None = None,
    prefix: str = "v",
) -> Hierarchy:
    """A random but structurally valid hierarchy.

    Values may stay unchanged across levels and merge in random groups,
    so row-lookup semantics and repeated labels get exercised.
    """
    leaves = [f"{prefix}{i:03d}" for i in range(n_leaves)]
    columns = [leaves]
    current = list(leaves)
    for level in range(1, depth):
        distinct = list(dict.fromkeys(current))
        shuffled = rng.sample(distinct, len(distinct))
        parent_of: dict[str, str] = {}
        group = 0
        position = 0
        while position < len(shuffled):
            size = rng.randint(1, min(3, len(shuffled) - position))
            chunk = shuffled[position : position + size]
            if size == 1 and rng.random() < 0.5:
                parent_of[chunk[0]] = chunk[0]  # stays at itself this level
            else:
                label = f"{prefix}L{level}g{group}"
                for value in chunk:
                    parent_of[value] = label
            group += 1
            position += size
        current = [parent_of[value] for value in current]
        columns.append(list(current))
    columns.append([WILDCARD] * n_leaves)
    rows = list(zip(*columns))
    return Hierarchy.from_rows(rows, attribute=attribute)


def random_raw_log(
    rng: random.Random,
    activity_hierarchy: Hierarchy,
    attribute_hierarchies: dict[str, Hierarchy],
    n_variants: tuple[int, int] = (2, 8),
    length: tuple[int, int] = (1, 8),
    multiplicity: tuple[int, int] = (1, 5),
) -> EventLog:
    """A log drawn from hierarchy leaves, with repeated variants."""
    schema = tuple(attribute_hierarchies)
    flows = [
        tuple(
            rng.choice(activity_hierarchy.leaves)
            for _ in range(rng.randint(*length))
        )
        for _ in range(rng.randint(*n_variants))
    ]
    traces = []
    for flow in flows:
        for _ in range(rng.randint(*multiplicity)):
            events = tuple(
                Event(
                    activity,
                    {
                        attr: rng.choice(h.leaves)
                        for attr, h in attribute_hierarchies.items()
                    },
                )
                for activity in flow
            )
            traces.append(Trace(f"c{len(traces):04d}", events))
    return EventLog(schema=schema, traces=tuple(traces))


def random_instance(rng: random.Random, attrs: int = 2, depth: int = 3, **log_kwargs):
    """A matching (raw log, activity hierarchy, attribute hierarchies) triple."""
    activity = random_hierarchy(
        rng, n_leaves=rng.randint(4, 8), depth=rng.randint(2, depth), prefix="a"
    )
    attribute_hierarchies = {
        f"q{i}": random_hierarchy(
            rng,
            n_leaves=rng.randint(3, 6),
            depth=rng.randint(1, depth),
            attribute=f"q{i}",
            prefix=f"q{i}x",
        )
        for i in range(attrs)
    }
    log = random_raw_log(rng, activity, attribute_hierarchies, **log_kwargs)
    return log, activity, attribute_hierarchies


def country_hierarchy() -> Hierarchy:
    """195 country leaves: 44 under Europe, China plus 150 others under Asia."""
    rows = [("Germany", "Europe", WILDCARD)]
    rows += [(f"eu{i:02d}", "Europe", WILDCARD) for i in range(43)]
    rows += [("China", "Asia", WILDCARD)]
    rows += [(f"as{i:03d}", "Asia", WILDCARD) for i in range(150)]
    return Hierarchy.from_rows(rows, attribute="country")


# --- oracles ---------------------------------------------------------------


def oracle_class_sizes(log, levels: LevelVector, activity_h, attr_hs) -> list[int]:
    """Independent re-derivation of equivalence class sizes at a node.

    Groups traces by generalized control flow plus generalized value
    sequences of the attributes in the vector, masking attribute values
    wherever the generalized activity (or a padding event) is a wildcard.
    """
    groups: Counter = Counter()
    for trace in log.traces:
        acts = []
        for event in trace.events:
            if event.is_wildcard:
                acts.append(WILDCARD)
            else:
                acts.append(
                    activity_h.generalize(event.activity, levels.activity_level)
                )
        signature = [tuple(acts)]
        for attr in sorted(levels.attribute_levels):
            level = levels.attribute_levels[attr]
            column = []
            for event, act in zip(trace.events, acts):
                if act == WILDCARD:
                    column.append(WILDCARD)
                else:
                    column.append(attr_hs[attr].generalize(event.attributes[attr], level))
            signature.append(tuple(column))
        groups[tuple(signature)] += 1
    return sorted(groups.values(), reverse=True)


def oracle_satisfies(log, levels, activity_h, attr_hs, k) -> bool:
    return min(oracle_class_sizes(log, levels, activity_h, attr_hs)) >= k


def oracle_minimal_cost(vectorized, activity_level, activity_h, attr_hs, selected, k):
    """Cheapest satisfying attribute vector given a frozen activity level,
    found by exhaustive enumeration.  Returns (cost, vector) or None."""
    selected = sorted(selected)
    depths = [attr_hs[a].depth for a in selected]
    best = None
    for combo in itertools.product(*(range(d + 1) for d in depths)):
        vector = LevelVector(activity_level, dict(zip(selected, combo)))
        if oracle_satisfies(vectorized, vector, activity_h, attr_hs, k):
            cost = activity_level + sum(combo)
            if best is None or cost < best[0]:
                best = (cost, combo)
    return best


def all_alignments(a, b):
    """Every global alignment of two sequences, as (matches, columns) plus
    the per-sequence column positions.  Exponential; tiny inputs only."""

    def rec(i, j, cols, pa, pb, matches):
        if i == len(a) and j == len(b):
            yield matches, cols, tuple(pa), tuple(pb)
            return
        if i < len(a) and j < len(b):
            gained = 1 if a[i] == b[j] and a[i] != WILDCARD else 0
            yield from rec(i + 1, j + 1, cols + 1, pa + [cols], pb + [cols], matches + gained)
        if i < len(a):
            yield from rec(i + 1, j, cols + 1, pa + [cols], pb, matches)
        if j < len(b):
            yield from rec(i, j + 1, cols + 1, pa, pb + [cols], matches)

    yield from rec(0, 0, 0, [], [], 0)


def oracle_best_pairwise(a, b):
    """Optimal (matches, columns) over all alignments: max matches, then
    min columns.  Memoized suffix recursion, independent of align_pair."""
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def go(i, j):
        if i == len(a) and j == len(b):
            return (0, 0)
        options = []
        if i < len(a) and j < len(b):
            matches, columns = go(i + 1, j + 1)
            gained = 1 if a[i] == b[j] and a[i] != WILDCARD else 0
            options.append((matches + gained, columns - 1))
        if i < len(a):
            matches, columns = go(i + 1, j)
            options.append((matches, columns - 1))
        if j < len(b):
            matches, columns = go(i, j + 1)
            options.append((matches, columns - 1))
        return max(options)

    matches, negative_columns = go(0, 0)
    return matches, -negative_columns
