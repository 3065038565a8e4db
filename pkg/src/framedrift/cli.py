"""Command-line pipeline: extract, profile, score, evaluate, stats, compare-raw-lemma.

Every run is driven by a PipelineConfig that can come from a declarative
config file (YAML or JSON), from command-line flags, or both; flags win.
Subcommands are idempotent: rerunning with unchanged inputs rewrites
byte-identical outputs. Targets are processed with a bounded worker
pool, but all files are written in one deterministic pass afterwards,
so output bytes do not depend on scheduling or --jobs.

Exit codes: 0 success (warnings allowed), 1 input or validation error,
2 internal error.
"""

import argparse
import json
import sys
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace
from pathlib import Path

import yaml

from . import __version__
from .collect import (
    CollectionMode,
    collect_frames,
    read_profile,
    write_profile,
)
from .corpus import TargetWord, extract_subcorpus, load_corpus_pair, read_targets
from .detect import (
    ChangeScore,
    classify,
    compare_raw_lemma,
    evaluate_scores,
    load_gold,
)
from .divergence import jsd, normalize
from .errors import ConfigError, EmptyProfile, PipelineError, SchemaError
from .parses import parse_stats, read_parses
from .reports import (
    build_decomposition_report,
    decomposition_to_json,
    decomposition_to_tsv,
    read_scores_tsv,
    scores_to_tsv,
)

PERIODS = ("c1", "c2")


@dataclass
class PipelineConfig:
    c1_lemma: str | None = None
    c1_raw: str | None = None
    c2_lemma: str | None = None
    c2_raw: str | None = None
    targets: str | None = None
    parses: str | None = None
    parses_raw: str | None = None
    gold_binary: str | None = None
    gold_graded: str | None = None
    mode: str = "ftfe"
    threshold: float = 0.5
    element_match: str = "token"
    match_form: str = "surface"
    raw_element_match: str = "substring"
    raw_match_form: str = "bare"
    group_fraction: float = 1.0 / 3.0
    jobs: int = 1
    out: str = "out"
    figures: bool = True

    def validate(self) -> None:
        if self.mode not in ("fe", "ftfe"):
            raise ConfigError(f"mode must be 'fe' or 'ftfe', got {self.mode!r}")
        if not 0.0 <= self.threshold <= 1.0:
            raise ConfigError(f"threshold must be in [0, 1], got {self.threshold}")
        if not 0.0 < self.group_fraction <= 0.5:
            raise ConfigError(
                f"group_fraction must be in (0, 0.5], got {self.group_fraction}"
            )
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")
        for field_name in ("element_match", "raw_element_match"):
            value = getattr(self, field_name)
            if value not in ("token", "substring"):
                raise ConfigError(f"{field_name} must be 'token' or 'substring', got {value!r}")
        for field_name in ("match_form", "raw_match_form"):
            value = getattr(self, field_name)
            if value not in ("surface", "bare"):
                raise ConfigError(f"{field_name} must be 'surface' or 'bare', got {value!r}")

    def require(self, *field_names: str) -> None:
        missing = [name for name in field_names if getattr(self, name) is None]
        if missing:
            raise ConfigError(
                "missing required settings: "
                + ", ".join(missing)
                + " (set them in the config file or as flags)"
            )

    @property
    def collection_mode(self) -> CollectionMode:
        return CollectionMode(self.mode)

    @property
    def out_dir(self) -> Path:
        return Path(self.out)


def load_config_file(path) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    if str(path).endswith(".json"):
        data = json.loads(text)
    else:
        data = yaml.safe_load(text)
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a mapping")
    known = {f.name for f in fields(PipelineConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {unknown}")
    return data


def build_config(args: argparse.Namespace) -> PipelineConfig:
    settings = {}
    if getattr(args, "config", None):
        settings.update(load_config_file(args.config))
    config = PipelineConfig(**settings)
    overrides = {
        name: getattr(args, name)
        for name in (f.name for f in fields(PipelineConfig))
        if getattr(args, name, None) is not None
    }
    config = replace(config, **overrides)
    config.validate()
    return config


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _parallel_map(jobs: int, func, items: list):
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))


def _warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


def _report_failures(failures: list[tuple[str, str]], processed: int) -> int:
    for key, reason in failures:
        _warn(f"{key}: {reason}")
    if failures:
        _warn(f"{len(failures)} item(s) failed, {processed} succeeded")
    if processed == 0:
        print("error: no items could be processed", file=sys.stderr)
        return 1
    return 0


# --- extract -----------------------------------------------------------

def cmd_extract(config: PipelineConfig) -> int:
    config.require("c1_lemma", "c1_raw", "c2_lemma", "c2_raw", "targets")
    targets = read_targets(config.targets)
    if not targets:
        raise ConfigError(f"no targets found in {config.targets}")
    subcorpora_dir = config.out_dir / "subcorpora"
    manifest_rows = []
    for period, lemma_path, raw_path in (
        ("c1", config.c1_lemma, config.c1_raw),
        ("c2", config.c2_lemma, config.c2_raw),
    ):
        corpus = load_corpus_pair(lemma_path, raw_path, period)
        for target in targets:
            pairs = extract_subcorpus(corpus, target)
            lemma_text = "".join(" ".join(p.lemma_tokens) + "\n" for p in pairs)
            raw_text = "".join(" ".join(p.raw_tokens) + "\n" for p in pairs)
            _write_text(subcorpora_dir / period / f"{target.surface}.lemma.txt", lemma_text)
            _write_text(subcorpora_dir / period / f"{target.surface}.raw.txt", raw_text)
            manifest_rows.append((period, target.surface, len(pairs)))
            if not pairs:
                _warn(f"target {target.surface!r} does not occur in period {period}")
    manifest_rows.sort()
    manifest = "period\ttarget\tsentences\n" + "".join(
        f"{period}\t{surface}\t{count}\n" for period, surface, count in manifest_rows
    )
    _write_text(subcorpora_dir / "manifest.tsv", manifest)
    print(f"wrote {len(manifest_rows)} subcorpora under {subcorpora_dir}")
    return 0


# --- profile -----------------------------------------------------------

def _profile_one(config: PipelineConfig, period: str, target: TargetWord):
    parses_path = Path(config.parses) / period / f"{target.surface}.jsonl"
    if not parses_path.exists():
        return ("missing", f"no parses file at {parses_path}")
    try:
        parses = read_parses(parses_path)
    except SchemaError as exc:
        return ("schema", f"{parses_path}: {exc}")
    profile = collect_frames(
        parses,
        target,
        config.collection_mode,
        period_id=period,
        element_match=config.element_match,
        match_form=config.match_form,
    )
    return ("ok", profile)


def cmd_profile(config: PipelineConfig) -> int:
    config.require("targets", "parses")
    targets = read_targets(config.targets)
    items = [(period, target) for period in PERIODS for target in targets]
    results = _parallel_map(
        config.jobs, lambda item: _profile_one(config, item[0], item[1]), items
    )
    profiles_dir = config.out_dir / "profiles" / config.mode
    failures = []
    empty = []
    processed = 0
    for (period, target), (status, payload) in zip(items, results):
        key = f"{period}/{target.surface}"
        if status != "ok":
            failures.append((key, payload))
            continue
        write_profile(payload, profiles_dir / period / f"{target.surface}.json")
        processed += 1
        if payload.total == 0:
            empty.append(key)
    for key in empty:
        _warn(f"{key}: no qualifying frames (empty profile; it cannot be scored)")
    code = _report_failures(failures, processed)
    print(f"wrote {processed} profiles under {profiles_dir}")
    return code


# --- score -------------------------------------------------------------

def _score_one(config: PipelineConfig, target: TargetWord):
    profiles_dir = config.out_dir / "profiles" / config.mode
    profiles = {}
    for period in PERIODS:
        path = profiles_dir / period / f"{target.surface}.json"
        if not path.exists():
            return ("missing", f"no profile at {path} (run the profile step first)")
        profiles[period] = read_profile(path)
    try:
        value = jsd(normalize(profiles["c1"]), normalize(profiles["c2"]))
        report = build_decomposition_report(profiles["c1"], profiles["c2"])
    except EmptyProfile as exc:
        return ("empty", str(exc))
    score = ChangeScore(
        target=target, jsd=value, label=classify(value, config.threshold)
    )
    return ("ok", (score, report))


def cmd_score(config: PipelineConfig) -> int:
    config.require("targets")
    targets = read_targets(config.targets)
    results = _parallel_map(
        config.jobs, lambda target: _score_one(config, target), targets
    )
    failures = []
    scored = []
    for target, (status, payload) in zip(targets, results):
        if status != "ok":
            failures.append((target.surface, payload))
        else:
            scored.append(payload)
    scores = [score for score, _ in scored]
    _write_text(config.out_dir / "scores.tsv", scores_to_tsv(scores))
    decompositions_dir = config.out_dir / "decompositions"
    for score, report in sorted(scored, key=lambda pair: pair[0].target.surface):
        surface = score.target.surface
        _write_text(decompositions_dir / f"{surface}.tsv", decomposition_to_tsv(report))
        _write_text(decompositions_dir / f"{surface}.json", decomposition_to_json(report))
    if config.figures:
        from .figures import render_decomposition

        figures_dir = config.out_dir / "figures"
        for _, report in sorted(scored, key=lambda pair: pair[0].target.surface):
            render_decomposition(report, figures_dir / f"{report.target}.png")
    code = _report_failures(failures, len(scored))
    print(f"scored {len(scored)} targets -> {config.out_dir / 'scores.tsv'}")
    return code


# --- evaluate ----------------------------------------------------------

def cmd_evaluate(config: PipelineConfig, scores_path=None) -> int:
    config.require("gold_binary", "gold_graded")
    scores_path = Path(scores_path) if scores_path else config.out_dir / "scores.tsv"
    rows = read_scores_tsv(scores_path)
    scores = [
        ChangeScore(target=TargetWord.from_surface(surface), jsd=value, label=label)
        for surface, value, label in rows
    ]
    gold = load_gold(config.gold_binary, config.gold_graded)
    report = evaluate_scores(scores, gold, fraction=config.group_fraction)

    record = {
        "spearman_rho": report.spearman_rho,
        "accuracy": report.accuracy,
        "group_fraction": config.group_fraction,
        "groups": {r.target: r.group for r in report.per_target},
        "per_target": [
            {
                "target": r.target,
                "jsd": r.jsd,
                "label": r.label,
                "gold_binary": r.gold_binary,
                "gold_graded": r.gold_graded,
                "group": r.group,
            }
            for r in report.per_target
        ],
    }
    _write_text(
        config.out_dir / "evaluation.json",
        json.dumps(record, ensure_ascii=False, indent=2) + "\n",
    )

    width = max(len(r.target) for r in report.per_target)
    print(f"{'target':<{width}}  {'jsd':>8}  {'label':<9}  gold  graded   group")
    for r in report.per_target:
        print(
            f"{r.target:<{width}}  {r.jsd:>8.6f}  {r.label:<9}  "
            f"{r.gold_binary:>4}  {r.gold_graded:>7.4f}  {r.group}"
        )
    print(f"spearman_rho  {report.spearman_rho:.6f}")
    print(f"accuracy      {report.accuracy:.6f}")
    return 0


# --- stats -------------------------------------------------------------

def cmd_stats(config: PipelineConfig) -> int:
    config.require("parses")
    root = Path(config.parses)
    files = sorted(root.rglob("*.jsonl"))
    if not files:
        raise ConfigError(f"no .jsonl files under {root}")
    print("file\ttotal\tfallback\tfallback_pct\tskipped\tskipped_pct")
    totals = [0, 0, 0]
    failures = []
    for path in files:
        try:
            stats = parse_stats(read_parses(path))
        except SchemaError as exc:
            failures.append((str(path), str(exc)))
            continue
        totals[0] += stats.total_sentences
        totals[1] += stats.fallback_count
        totals[2] += stats.skipped_count
        print(
            f"{path.relative_to(root)}\t{stats.total_sentences}\t"
            f"{stats.fallback_count}\t{stats.fallback_rate:.1%}\t"
            f"{stats.skipped_count}\t{stats.skipped_rate:.1%}"
        )
    total, fallback, skipped = totals
    fallback_pct = fallback / total if total else 0.0
    skipped_pct = skipped / total if total else 0.0
    print(f"TOTAL\t{total}\t{fallback}\t{fallback_pct:.1%}\t{skipped}\t{skipped_pct:.1%}")
    return _report_failures(failures, len(files) - len(failures))


# --- compare-raw-lemma -------------------------------------------------

def _compare_one(config: PipelineConfig, period: str, target: TargetWord):
    lemma_path = Path(config.parses) / period / f"{target.surface}.jsonl"
    raw_path = Path(config.parses_raw) / period / f"{target.surface}.jsonl"
    for path in (lemma_path, raw_path):
        if not path.exists():
            return ("missing", f"no parses file at {path}")
    try:
        profile_lemma = collect_frames(
            read_parses(lemma_path),
            target,
            config.collection_mode,
            period_id=period,
            element_match=config.element_match,
            match_form=config.match_form,
        )
        profile_raw = collect_frames(
            read_parses(raw_path),
            target,
            config.collection_mode,
            period_id=period,
            element_match=config.raw_element_match,
            match_form=config.raw_match_form,
        )
        value = compare_raw_lemma(profile_raw, profile_lemma)
    except (SchemaError, EmptyProfile) as exc:
        return ("failed", str(exc))
    return ("ok", value)


def cmd_compare_raw_lemma(config: PipelineConfig) -> int:
    config.require("targets", "parses", "parses_raw")
    targets = read_targets(config.targets)
    items = [(target, period) for target in targets for period in PERIODS]
    results = _parallel_map(
        config.jobs, lambda item: _compare_one(config, item[1], item[0]), items
    )
    failures = []
    rows = []
    for (target, period), (status, payload) in zip(items, results):
        key = f"{period}/{target.surface}"
        if status != "ok":
            failures.append((key, payload))
        else:
            rows.append((target.surface, period, payload))
    rows.sort()
    table = "target\tperiod\tjsd_raw_vs_lemma\n" + "".join(
        f"{surface}\t{period}\t{value:.6f}\n" for surface, period, value in rows
    )
    _write_text(config.out_dir / "raw_vs_lemma.tsv", table)
    print(table, end="")
    return _report_failures(failures, len(rows))


# --- argument parsing --------------------------------------------------

class _UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    # Usage problems are input errors (exit 1), not internal errors.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="YAML or JSON config file")
    parser.add_argument("--c1-lemma", dest="c1_lemma", help="period 1 lemmatized corpus")
    parser.add_argument("--c1-raw", dest="c1_raw", help="period 1 raw corpus")
    parser.add_argument("--c2-lemma", dest="c2_lemma", help="period 2 lemmatized corpus")
    parser.add_argument("--c2-raw", dest="c2_raw", help="period 2 raw corpus")
    parser.add_argument("--targets", help="target list file, one surface form per line")
    parser.add_argument("--parses", help="parses directory: <parses>/<period>/<target>.jsonl")
    parser.add_argument("--parses-raw", dest="parses_raw", help="raw-side parses directory")
    parser.add_argument("--gold-binary", dest="gold_binary", help="binary gold file")
    parser.add_argument("--gold-graded", dest="gold_graded", help="graded gold file")
    parser.add_argument("--mode", choices=("fe", "ftfe"), default=None)
    parser.add_argument("--threshold", type=float, default=None)
    parser.add_argument(
        "--element-match", dest="element_match", choices=("token", "substring"), default=None
    )
    parser.add_argument(
        "--match-form", dest="match_form", choices=("surface", "bare"), default=None
    )
    parser.add_argument(
        "--raw-element-match",
        dest="raw_element_match",
        choices=("token", "substring"),
        default=None,
    )
    parser.add_argument(
        "--raw-match-form", dest="raw_match_form", choices=("surface", "bare"), default=None
    )
    parser.add_argument("--group-fraction", dest="group_fraction", type=float, default=None)
    parser.add_argument("--jobs", type=int, default=None)
    parser.add_argument("--out", help="output directory")
    parser.add_argument(
        "--figures",
        dest="figures",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="render decomposition charts alongside the TSV reports",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="framedrift",
        description="Detect lexical semantic change from shifts in frame distributions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    specs = (
        ("extract", "split corpora into per-target subcorpora", cmd_extract),
        ("profile", "collect frame profiles from parses", cmd_profile),
        ("score", "score change and write decomposition reports", cmd_score),
        ("evaluate", "evaluate scores against gold files", cmd_evaluate),
        ("stats", "parse provenance statistics over a parses directory", cmd_stats),
        (
            "compare-raw-lemma",
            "divergence between raw-derived and lemma-derived profiles",
            cmd_compare_raw_lemma,
        ),
    )
    for name, help_text, func in specs:
        sub = subparsers.add_parser(name, help=help_text)
        _add_config_flags(sub)
        if name == "evaluate":
            sub.add_argument("--scores", help="scores.tsv path (default: <out>/scores.tsv)")
        sub.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        config = build_config(args)
        if args.func is cmd_evaluate:
            return cmd_evaluate(config, scores_path=args.scores)
        return args.func(config)
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, UnicodeDecodeError, json.JSONDecodeError, yaml.YAMLError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception:
        traceback.print_exc()
        return 2


if __name__ == "__main__":
    sys.exit(main())
