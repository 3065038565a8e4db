"""Frame-distribution tracking for lexical semantic change detection.

The pipeline: extract per-target subcorpora from line-aligned corpus
pairs, ingest frame-semantic parses from a JSONL interchange format,
collect per-period frame profiles, score change with base-2
Jensen-Shannon divergence, decompose each score into signed per-frame
contributions, and evaluate against gold rankings and labels.
"""

__version__ = "0.1.0"

from .collect import CollectionMode, FrameProfile, collect_frames
from .corpus import AlignedCorpus, SentencePair, TargetWord, extract_subcorpus, load_corpus_pair
from .detect import (
    CHANGED,
    UNCHANGED,
    ChangeScore,
    EvaluationReport,
    GoldData,
    accuracy,
    classify,
    compare_raw_lemma,
    evaluate_scores,
    group_targets,
    score_targets,
    spearman,
)
from .divergence import Decomposition, FrameDistribution, decompose, jsd, normalize
from .errors import (
    ConfigError,
    CorpusFormatError,
    DegenerateInput,
    EmptyProfile,
    FractionOutOfRange,
    KeyMismatch,
    LineCountMismatch,
    MissingTarget,
    PipelineError,
    SchemaError,
)
from .parses import (
    FrameElementAnnotation,
    FrameInstance,
    ParseStats,
    SentenceParse,
    parse_stats,
    read_parses,
    write_parses,
)
from .reports import DecompositionReport, build_decomposition_report

__all__ = [
    "AlignedCorpus",
    "CHANGED",
    "ChangeScore",
    "CollectionMode",
    "ConfigError",
    "CorpusFormatError",
    "Decomposition",
    "DecompositionReport",
    "DegenerateInput",
    "EmptyProfile",
    "EvaluationReport",
    "FractionOutOfRange",
    "FrameDistribution",
    "FrameElementAnnotation",
    "FrameInstance",
    "FrameProfile",
    "GoldData",
    "KeyMismatch",
    "LineCountMismatch",
    "MissingTarget",
    "ParseStats",
    "PipelineError",
    "SchemaError",
    "SentencePair",
    "SentenceParse",
    "TargetWord",
    "UNCHANGED",
    "accuracy",
    "build_decomposition_report",
    "classify",
    "collect_frames",
    "compare_raw_lemma",
    "decompose",
    "evaluate_scores",
    "extract_subcorpus",
    "group_targets",
    "jsd",
    "load_corpus_pair",
    "normalize",
    "parse_stats",
    "read_parses",
    "score_targets",
    "spearman",
    "write_parses",
]
