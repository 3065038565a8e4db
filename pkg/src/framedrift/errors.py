"""Exception types shared across the pipeline.

Everything raised deliberately by this package derives from PipelineError,
so the CLI can distinguish input/validation problems (exit code 1) from
genuine bugs (exit code 2).
"""


class PipelineError(Exception):
    """Base class for input and validation errors raised by this package."""


class ConfigError(PipelineError):
    """The pipeline configuration is incomplete or out of range."""


class CorpusFormatError(PipelineError):
    """A corpus file violates the one-sentence-per-line layout."""


class LineCountMismatch(PipelineError):
    """Lemmatized and raw corpus files disagree on sentence count."""

    def __init__(self, lemma_count: int, raw_count: int):
        super().__init__(
            f"lemma file has {lemma_count} sentences but raw file has {raw_count}; "
            "the two views must be line-aligned"
        )
        self.lemma_count = lemma_count
        self.raw_count = raw_count


class SchemaError(PipelineError):
    """A JSONL parse record does not conform to the interchange schema."""

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class EmptyProfile(PipelineError):
    """A frame profile with zero total count cannot be turned into a distribution."""

    def __init__(self, target: str, period_id: str):
        super().__init__(
            f"no qualifying frames for {target!r} in period {period_id!r}; "
            "the target cannot be scored"
        )
        self.target = target
        self.period_id = period_id


class MissingTarget(PipelineError):
    """A target is present in one period's profile set but not the other."""

    def __init__(self, target: str, period_id: str):
        super().__init__(f"target {target!r} has no profile for period {period_id!r}")
        self.target = target
        self.period_id = period_id


class KeyMismatch(PipelineError):
    """Two target-keyed maps that must cover the same set do not."""

    def __init__(self, only_left: set, only_right: set):
        parts = []
        if only_left:
            parts.append(f"only in first: {sorted(only_left)}")
        if only_right:
            parts.append(f"only in second: {sorted(only_right)}")
        super().__init__("target sets differ; " + "; ".join(parts))
        self.only_left = frozenset(only_left)
        self.only_right = frozenset(only_right)


class DegenerateInput(PipelineError):
    """Rank correlation is undefined because one side is constant."""


class FractionOutOfRange(PipelineError):
    """Quantile fraction for grouping must lie in (0, 0.5]."""

    def __init__(self, fraction: float):
        super().__init__(f"group fraction must be in (0, 0.5], got {fraction}")
        self.fraction = fraction
