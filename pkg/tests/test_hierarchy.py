import random

import pytest

from pmdg import (
    MISSING,
    WILDCARD,
    DuplicateLeaf,
    Event,
    EventLog,
    Hierarchy,
    HierarchyFormatError,
    InconsistentDepth,
    LevelVector,
    MissingRoot,
    NonFunctionalLevel,
    Trace,
    UnknownValue,
    apply_to_log,
    validate_table,
)

from helpers import clinic_hierarchies, clinic_log, random_hierarchy


def test_validate_table_accepts_repeats_across_levels():
    table = validate_table(
        [
            ("a", "a", "ab", WILDCARD),
            ("b", "b", "ab", WILDCARD),
            ("c", "cd", "cd", WILDCARD),
            ("d", "cd", "cd", WILDCARD),
        ]
    )
    assert table.depth == 3
    assert table.leaves == ("a", "b", "c", "d")


def test_validate_table_errors():
    with pytest.raises(InconsistentDepth):
        validate_table([("a", "x", WILDCARD), ("b", WILDCARD)])
    with pytest.raises(MissingRoot):
        validate_table([("a", "x"), ("b", "x")])
    with pytest.raises(DuplicateLeaf):
        validate_table([("a", WILDCARD), ("a", WILDCARD)])
    with pytest.raises(NonFunctionalLevel):
        validate_table(
            [("a", "x", "p", WILDCARD), ("b", "x", "q", WILDCARD)]
        )
    with pytest.raises(HierarchyFormatError):
        validate_table([])
    with pytest.raises(HierarchyFormatError):
        validate_table([(WILDCARD, WILDCARD)])
    with pytest.raises(InconsistentDepth):
        validate_table([("a",)])


def test_generalize_is_row_lookup():
    hierarchy = Hierarchy.from_rows(
        [
            ("a", "a", "top", WILDCARD),
            ("b", "mid", "top", WILDCARD),
        ]
    )
    assert hierarchy.generalize("a", 0) == "a"
    assert hierarchy.generalize("a", 1) == "a"  # stays at itself
    assert hierarchy.generalize("a", 2) == "top"
    assert hierarchy.generalize("a", 3) == WILDCARD
    assert hierarchy.generalize("b", 1) == "mid"
    with pytest.raises(UnknownValue):
        hierarchy.generalize("mid", 1)  # not a leaf
    with pytest.raises(ValueError):
        hierarchy.generalize("a", 4)


def test_generalize_wildcard_and_missing():
    _, role, _ = clinic_hierarchies()
    assert role.generalize(WILDCARD, 0) == WILDCARD
    assert role.generalize(WILDCARD, 2) == WILDCARD
    # The missing literal survives until the root unless the table maps it.
    assert role.generalize(MISSING, 0) == MISSING
    assert role.generalize(MISSING, 1) == MISSING
    assert role.generalize(MISSING, 2) == WILDCARD
    explicit = Hierarchy.from_rows(
        [("x", "known", WILDCARD), (MISSING, "known", WILDCARD)]
    )
    assert explicit.generalize(MISSING, 1) == "known"


def test_alpha_counts_leaves():
    activity, role, _ = clinic_hierarchies()
    assert role.alpha("GP") == 1
    assert role.alpha("Medical Staff") == 2
    assert role.alpha(WILDCARD) == 3
    assert activity.alpha("Radiology Scan") == 2
    assert activity.alpha(WILDCARD) == 5
    # Implicit missing literal counts as its own single leaf.
    assert role.alpha(MISSING) == 1
    with pytest.raises(UnknownValue):
        role.alpha("Surgeon")


def test_alpha_with_stay_at_self_rows():
    hierarchy = Hierarchy.from_rows(
        [
            ("a", "a", "g", WILDCARD),
            ("b", "a", "g", WILDCARD),
            ("c", "c", "g", WILDCARD),
        ]
    )
    # "a" names both a leaf and its level-1 group of two leaves.
    assert hierarchy.alpha("a") == 2
    assert hierarchy.alpha("g") == 3
    assert hierarchy.alpha(WILDCARD) == 3


def test_functional_consistency_property_random():
    rng = random.Random(42)
    for _ in range(20):
        hierarchy = random_hierarchy(
            rng, n_leaves=rng.randint(3, 12), depth=rng.randint(1, 5)
        )
        for level in range(hierarchy.depth):
            image: dict[str, str] = {}
            for leaf in hierarchy.leaves:
                value = hierarchy.generalize(leaf, level)
                parent = hierarchy.generalize(leaf, level + 1)
                assert image.setdefault(value, parent) == parent


def test_level_vector_cost_and_covers():
    small = LevelVector(1, {"r": 0, "s": 2})
    big = LevelVector(1, {"r": 1, "s": 2})
    assert small.cost == 3
    assert big.covers(small)
    assert not small.covers(big)
    with pytest.raises(ValueError):
        small.covers(LevelVector(0, {"r": 0}))
    with pytest.raises(ValueError):
        LevelVector(-1)


def test_apply_to_log_level_zero_is_identity():
    log = clinic_log()
    activity, role, _ = clinic_hierarchies()
    unchanged = apply_to_log(log, LevelVector(0, {"role": 0}), activity, {"role": role})
    assert unchanged == log


def test_apply_to_log_top_level_masks_everything():
    log = clinic_log()
    activity, role, _ = clinic_hierarchies()
    top = apply_to_log(log, LevelVector(2, {"role": 2}), activity, {"role": role})
    for trace in top.traces:
        for event in trace.events:
            assert event.activity == WILDCARD
            assert event.attributes["role"] == WILDCARD


def test_apply_to_log_masks_attributes_of_hidden_activities():
    # "Vitals" generalizes to the wildcard at level 1; the event's role
    # must disappear with it even though the role level is 0.
    log = clinic_log()
    activity, role, _ = clinic_hierarchies()
    out = apply_to_log(log, LevelVector(1, {"role": 0}), activity, {"role": role})
    vitals_image = out.traces[0].events[1]
    assert vitals_image.activity == WILDCARD
    assert vitals_image.attributes["role"] == WILDCARD
    assert vitals_image.origin_index == log.traces[0].events[1].origin_index
    # Events whose activity survives keep their exact role at level 0.
    assert out.traces[0].events[2].attributes["role"] == "GP"


def test_apply_to_log_leaves_unlisted_attributes_alone():
    log = clinic_log(with_location=True)
    activity, role, _ = clinic_hierarchies()
    out = apply_to_log(log, LevelVector(0, {"role": 1}), activity, {"role": role})
    assert [e.attributes["location"] for e in out.traces[0].events] == [
        "Day Clinic", "Day Clinic", "Day Clinic", "Hospital",
    ]


def test_apply_to_log_passes_wildcard_events_through():
    activity, role, _ = clinic_hierarchies()
    pad = Event(WILDCARD, {"role": WILDCARD})
    log = EventLog(
        schema=("role",),
        traces=(Trace("1", (Event("Register", {"role": "Admin"}), pad)),),
    )
    out = apply_to_log(log, LevelVector(1, {"role": 1}), activity, {"role": role})
    assert out.traces[0].events[1] == pad
    assert out.traces[0].events[1].is_wildcard


def test_apply_to_log_validates_levels():
    log = clinic_log()
    activity, role, _ = clinic_hierarchies()
    with pytest.raises(ValueError):
        apply_to_log(log, LevelVector(0, {"nope": 1}), activity, {"role": role})
    with pytest.raises(ValueError):
        apply_to_log(log, LevelVector(0, {"role": 1}), activity, {})
    with pytest.raises(ValueError):
        apply_to_log(log, LevelVector(0, {"role": 5}), activity, {"role": role})
