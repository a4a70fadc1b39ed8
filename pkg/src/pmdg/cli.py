"""Command line front end: ``pmdg <command> ...``.

Commands cover the individual pipeline stages (``preprocess``,
``vectorize``, ``select-hierarchy``, ``validate``, ``metrics ...``) and
the end-to-end ``anonymize`` run driven by a YAML configuration.

Exit codes: 0 success, 1 failed validation, 2 configuration or usage
error, 3 input parse error, 4 privacy requirement unsatisfiable
(fewer traces than k), 5 I/O failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .anonymize import search
from .errors import (
    ConfigError,
    DataError,
    InsufficientTraces,
    IoFailure,
    ParseError,
)
from .hierarchy import Hierarchy
from .logio import (
    LogCsvSpec,
    PipelineConfig,
    load_config,
    read_hierarchy,
    read_log_csv,
    read_log_xes,
    write_log_csv,
)
from .metrics import (
    collect_handover_pairs_by_column,
    export_dot,
    handover_graph,
    handover_precision,
    handover_precision_from_pairs,
    remaining_variants,
)
from .model import WILDCARD, EventLog, drop_singleton_variants, validate_k, variants
from .selection import select
from .vectorize import vectorize_msa, vectorize_naive

THREADS_ENV = "PMDG_THREADS"


@dataclass(frozen=True)
class RunManifest:
    """Machine-readable record of one ``anonymize`` run.

    Identical inputs produce an identical manifest except for the
    wall-clock ``timings_s`` block.
    """

    tool_version: str
    input_path: str
    input_sha256: str
    config_sha256: str
    k: int
    vectorization: str
    utility_notion: str
    quasi_identifiers: tuple[str, ...]
    drop_singletons: bool
    traces_read: int
    traces_kept: int
    aligned_length: int
    chosen_hierarchies: dict
    levels: dict
    nodes_evaluated: int
    variants_input: int
    variants_output: int
    min_class_size: int
    class_size_histogram: list
    handover_precision: dict
    timings_s: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True, ensure_ascii=False)


def _sha256_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _sha256_config(config: PipelineConfig) -> str:
    canonical = json.dumps(
        {
            "k": config.k,
            "quasi_identifiers": list(config.quasi_identifiers),
            "activity_hierarchies": list(config.activity_hierarchies),
            "attribute_hierarchies": {
                k: list(v) for k, v in sorted(config.attribute_hierarchies.items())
            },
            "vectorization": config.vectorization,
            "utility_notion": config.utility_notion,
            "level_weights": list(config.level_weights),
            "drop_singletons": config.drop_singletons,
            "wildcard": config.wildcard,
        },
        sort_keys=True,
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _read_log(path: str, spec: LogCsvSpec, wildcard: str) -> EventLog:
    if str(path).lower().endswith(".xes"):
        return read_log_xes(path, wildcard=wildcard)
    return read_log_csv(path, spec, wildcard=wildcard)


def _pick_hierarchy(
    log: EventLog,
    paths: tuple[str, ...],
    attribute: str | None,
    config: PipelineConfig,
) -> tuple[Hierarchy, str, tuple]:
    candidates = [
        Hierarchy(read_hierarchy(path, wildcard=config.wildcard), attribute=attribute)
        for path in paths
    ]
    if len(candidates) == 1:
        return candidates[0], paths[0], ()
    winner, profiles = select(
        log, candidates, config.level_weights, config.utility_notion
    )
    chosen = candidates.index(winner)
    return winner, paths[chosen], tuple(
        {"path": paths[i], "total": profiles[i].total} for i in range(len(paths))
    )


def run_pipeline(
    config: PipelineConfig,
    input_path: str,
    output_path: str | None = None,
    report_path: str | None = None,
    k: int | None = None,
) -> RunManifest:
    """Run preprocess, vectorize, select, search, measure, and write.

    ``k`` overrides the configured threshold.  The anonymized log goes to
    ``output_path`` (CSV) and the manifest additionally to
    ``report_path`` (JSON) when given.
    """
    k = config.k if k is None else k
    if k < 1:
        raise ConfigError(f"k must be at least 1, got {k}")
    timings: dict[str, float] = {}

    started = time.perf_counter()
    log = _read_log(input_path, config.csv, config.wildcard)
    traces_read = len(log.traces)
    if config.drop_singletons:
        log = drop_singleton_variants(log)
    traces_kept = len(log.traces)
    if traces_kept < k:
        raise InsufficientTraces(
            f"{traces_kept} traces remain after preprocessing, need at least {k}"
        )
    timings["read_preprocess"] = time.perf_counter() - started

    started = time.perf_counter()
    vectorized = (
        vectorize_msa(log) if config.vectorization == "msa" else vectorize_naive(log)
    )
    timings["vectorize"] = time.perf_counter() - started

    started = time.perf_counter()
    activity_hierarchy, activity_path, activity_scores = _pick_hierarchy(
        vectorized, config.activity_hierarchies, None, config
    )
    attribute_hierarchies = {}
    chosen_paths: dict = {"activity": activity_path}
    scores: dict = {}
    if activity_scores:
        scores["activity"] = list(activity_scores)
    for attr in config.quasi_identifiers:
        hierarchy, path, attr_scores = _pick_hierarchy(
            vectorized, config.attribute_hierarchies[attr], attr, config
        )
        attribute_hierarchies[attr] = hierarchy
        chosen_paths[attr] = path
        if attr_scores:
            scores[attr] = list(attr_scores)
    if scores:
        chosen_paths["scores"] = scores
    timings["select_hierarchies"] = time.perf_counter() - started

    started = time.perf_counter()
    result = search(
        vectorized, activity_hierarchy, attribute_hierarchies,
        config.quasi_identifiers, k,
    )
    timings["search"] = time.perf_counter() - started

    started = time.perf_counter()
    precision = {
        attr: round(
            handover_precision(log, result.anonymized, attr, attribute_hierarchies[attr]),
            9,
        )
        for attr in config.quasi_identifiers
    }
    histogram: dict[int, int] = {}
    for size in result.class_sizes:
        histogram[size] = histogram.get(size, 0) + 1
    manifest = RunManifest(
        tool_version=f"pmdg {__version__}",
        input_path=str(input_path),
        input_sha256=_sha256_file(input_path),
        config_sha256=_sha256_config(config),
        k=k,
        vectorization=config.vectorization,
        utility_notion=config.utility_notion,
        quasi_identifiers=tuple(config.quasi_identifiers),
        drop_singletons=config.drop_singletons,
        traces_read=traces_read,
        traces_kept=traces_kept,
        aligned_length=len(vectorized.traces[0]) if vectorized.traces else 0,
        chosen_hierarchies=chosen_paths,
        levels=result.chosen.as_dict(),
        nodes_evaluated=result.nodes_evaluated,
        variants_input=len(variants(log)),
        variants_output=remaining_variants(result.anonymized),
        min_class_size=min(result.class_sizes),
        class_size_histogram=[
            [size, count] for size, count in sorted(histogram.items())
        ],
        handover_precision=precision,
        timings_s=timings,
    )
    timings["metrics"] = time.perf_counter() - started

    if output_path is not None:
        write_log_csv(
            result.anonymized, output_path, config.csv, wildcard=config.wildcard
        )
    if report_path is not None:
        Path(report_path).write_text(manifest.to_json() + "\n", encoding="utf-8")
    return manifest


def _csv_spec_from_args(args: argparse.Namespace) -> LogCsvSpec:
    columns = None
    if getattr(args, "columns", None):
        columns = tuple(c.strip() for c in args.columns.split(",") if c.strip())
    return LogCsvSpec(
        case_column=args.case_column,
        activity_column=args.activity_column,
        attribute_columns=columns,
        delimiter=args.delimiter,
    )


def _add_csv_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--case-column", default="case")
    parser.add_argument("--activity-column", default="activity")
    parser.add_argument(
        "--columns", default=None,
        help="comma-separated attribute columns (default: all other columns)",
    )
    parser.add_argument("--delimiter", default=",")
    parser.add_argument(
        "--wildcard-literal", default=WILDCARD,
        help=f"literal standing for the wildcard in files (default: {WILDCARD})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pmdg",
        description="k-anonymize multi-perspective event logs by generalization",
    )
    parser.add_argument("--version", action="version", version=f"pmdg {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("preprocess", help="drop single-occurrence variants")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    _add_csv_options(p)

    p = commands.add_parser("vectorize", help="pad traces to a uniform length")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--strategy", choices=("naive", "msa"), default="msa")
    _add_csv_options(p)

    p = commands.add_parser(
        "select-hierarchy", help="score candidate hierarchies against a log"
    )
    p.add_argument("--in", dest="input", required=True)
    p.add_argument(
        "--perspective", required=True,
        help='attribute name, or "activity" for the control-flow perspective',
    )
    p.add_argument(
        "--candidates", required=True, help="comma-separated hierarchy CSV paths"
    )
    p.add_argument("--notion", choices=("class_count", "size_balance"),
                   default="class_count")
    p.add_argument("--weights", default="1",
                   help="comma-separated per-level weights (default: 1)")
    _add_csv_options(p)

    p = commands.add_parser("anonymize", help="run the full pipeline")
    p.add_argument("--config", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--k", type=int, default=None, help="override the configured k")
    p.add_argument("--report", default=None, help="write the run manifest JSON here")

    p = commands.add_parser("validate", help="check k-anonymity of a log")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument(
        "--attr", action="append", default=[],
        help="quasi-identifier attribute (repeatable or comma-separated)",
    )
    _add_csv_options(p)

    metrics = commands.add_parser("metrics", help="utility metrics")
    sub = metrics.add_subparsers(dest="metric", required=True)

    p = sub.add_parser("variants", help="count remaining control-flow variants")
    p.add_argument("--in", dest="input", required=True)
    _add_csv_options(p)

    p = sub.add_parser("handover-graph", help="export the handover-of-work graph")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--attr", required=True)
    p.add_argument("--dot", default=None, help="write DOT to this path")
    _add_csv_options(p)

    p = sub.add_parser(
        "handover-precision", help="how precise handovers remain after generalization"
    )
    p.add_argument("--in", dest="input", required=True,
                   help="the original (pre-anonymization) log")
    p.add_argument("--anonymized", required=True)
    p.add_argument("--attr", required=True)
    p.add_argument("--hierarchy", required=True)
    p.add_argument("--aggregate", choices=("occurrences", "pairs"),
                   default="occurrences")
    p.add_argument(
        "--strategy", choices=("naive", "msa"), default="msa",
        help="vectorization strategy the anonymized log was built with",
    )
    _add_csv_options(p)

    return parser


def _threads_from_env() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ConfigError(f"{THREADS_ENV} must be at least 1, got {value}")
    return value


def _dispatch(args: argparse.Namespace) -> int:
    _threads_from_env()

    if args.command == "anonymize":
        config = load_config(args.config)
        manifest = run_pipeline(
            config, args.input, output_path=args.output,
            report_path=args.report, k=args.k,
        )
        print(f"levels: {json.dumps(manifest.levels, sort_keys=True)}")
        print(f"classes: min size {manifest.min_class_size}, "
              f"variants {manifest.variants_input} -> {manifest.variants_output}")
        print(f"wrote {args.output}")
        return 0

    spec = _csv_spec_from_args(args)
    wildcard = args.wildcard_literal

    if args.command == "preprocess":
        log = _read_log(args.input, spec, wildcard)
        kept = drop_singleton_variants(log)
        write_log_csv(kept, args.output, spec, wildcard=wildcard)
        print(f"kept {len(kept.traces)} of {len(log.traces)} traces")
        return 0

    if args.command == "vectorize":
        log = _read_log(args.input, spec, wildcard)
        vectorized = vectorize_msa(log) if args.strategy == "msa" else vectorize_naive(log)
        write_log_csv(vectorized, args.output, spec, wildcard=wildcard)
        print(f"aligned {len(vectorized.traces)} traces to length "
              f"{len(vectorized.traces[0])}")
        return 0

    if args.command == "select-hierarchy":
        log = _read_log(args.input, spec, wildcard)
        attribute = None if args.perspective == "activity" else args.perspective
        paths = [c.strip() for c in args.candidates.split(",") if c.strip()]
        weights = tuple(float(w) for w in args.weights.split(","))
        candidates = [
            Hierarchy(read_hierarchy(path, wildcard=wildcard), attribute=attribute)
            for path in paths
        ]
        winner, profiles = select(log, candidates, weights, args.notion)
        for path, profile in zip(paths, profiles):
            levels = ", ".join(f"{u:g}" for u in profile.per_level)
            print(f"{path}: levels [{levels}] total {profile.total:g}")
        print(f"selected: {paths[candidates.index(winner)]}")
        return 0

    if args.command == "validate":
        log = _read_log(args.input, spec, wildcard)
        selected: list[str] = []
        for chunk in args.attr:
            selected.extend(a.strip() for a in chunk.split(",") if a.strip())
        report = validate_k(log, selected, args.k)
        if report.ok:
            print(f"OK: every class has at least {args.k} members "
                  f"(smallest: {min(report.class_sizes)})")
            return 0
        print(f"FAIL: {len(report.violations)} of {len(report.class_sizes)} classes "
              f"below k={args.k}")
        for signature, size in report.violations:
            print(f"  size {size}: {signature}")
        return 1

    if args.command == "metrics":
        log = _read_log(args.input, spec, wildcard)
        if args.metric == "variants":
            print(remaining_variants(log))
            return 0
        if args.metric == "handover-graph":
            graph = handover_graph(log, args.attr)
            if args.dot:
                export_dot(graph, args.dot)
                print(f"wrote {args.dot}")
            else:
                for (source, target), count in sorted(graph.edges.items()):
                    print(f"{source} -> {target}: {count}")
            return 0
        if args.metric == "handover-precision":
            anonymized = _read_log(args.anonymized, spec, wildcard)
            hierarchy = Hierarchy(
                read_hierarchy(args.hierarchy, wildcard=wildcard), attribute=args.attr
            )
            # Serialized logs lose the origin linkage of fully masked
            # events, so match by column against a fresh (deterministic)
            # vectorization of the original instead.
            vectorized = (
                vectorize_msa(log) if args.strategy == "msa" else vectorize_naive(log)
            )
            pairs = collect_handover_pairs_by_column(vectorized, anonymized, args.attr)
            value = handover_precision_from_pairs(
                pairs, hierarchy, aggregate=args.aggregate
            )
            print(f"{value:.1f}")
            return 0

    raise AssertionError(f"unhandled command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except ConfigError as exc:
        print(f"pmdg: configuration error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"pmdg: parse error: {exc}", file=sys.stderr)
        return 3
    except DataError as exc:
        print(f"pmdg: data error: {exc}", file=sys.stderr)
        return 3
    except InsufficientTraces as exc:
        print(f"pmdg: {exc}", file=sys.stderr)
        return 4
    except IoFailure as exc:
        print(f"pmdg: i/o error: {exc}", file=sys.stderr)
        return 5
    except OSError as exc:
        print(f"pmdg: i/o error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
