"""Choosing between candidate generalization hierarchies.

When several hierarchies exist for the same attribute, the better one is
the one whose levels keep traces distinguishable for longer.  This demo
scores two hierarchies for a ticketing log's priority attribute: one
collapses everything to "Any" in a single step, the other goes through
an intermediate urgent/routine split.
"""

from pmdg import Event, EventLog, Hierarchy, Trace, select

PRIORITIES = ["P1", "P2", "P3", "P4"]

FLAT = Hierarchy.from_rows(
    [(p, "⋆") for p in PRIORITIES], attribute="priority"
)

STAGED = Hierarchy.from_rows(
    [
        ("P1", "Urgent", "⋆"),
        ("P2", "Urgent", "⋆"),
        ("P3", "Routine", "⋆"),
        ("P4", "Routine", "⋆"),
    ],
    attribute="priority",
)


def build_log():
    # Eight one-event tickets covering every priority twice.
    traces = tuple(
        Trace(f"t{i}", (Event("Open", {"priority": PRIORITIES[i % 4]}),))
        for i in range(8)
    )
    return EventLog(schema=("priority",), traces=traces)


def main():
    log = build_log()
    winner, profiles = select(log, [FLAT, STAGED], weights=[1.0])
    for candidate, profile in zip(("flat", "staged"), profiles):
        print(f"{candidate:>7}: per-level classes {list(profile.per_level)} "
              f"-> total {profile.total:g}")
    print()
    name = "flat" if winner is FLAT else "staged"
    print(f"selected: {name} (keeps more equivalence classes per step)")


if __name__ == "__main__":
    main()
