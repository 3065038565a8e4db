"""Aligned corpus loading and per-target subcorpus extraction.

Corpora follow the SemEval 2020 Task 1 layout: plain UTF-8 text, one
sentence per line, space-separated tokens. Each time period ships as a
pair of files, a lemmatized view and a raw (token) view, with identical
line counts so that line N in one is the same sentence as line N in the
other. Target words in the lemmatized view carry a POS suffix, e.g.
``plane_nn``.
"""

from dataclasses import dataclass
from pathlib import Path

from .errors import CorpusFormatError, LineCountMismatch


@dataclass(frozen=True)
class SentencePair:
    """One sentence in both its lemmatized and raw tokenization.

    ``index`` is the 0-based line number, shared by both views.
    """

    index: int
    lemma_tokens: tuple[str, ...]
    raw_tokens: tuple[str, ...]


@dataclass(frozen=True)
class TargetWord:
    """A target word as it appears in the gold files: ``lemma_pos``."""

    surface: str
    lemma: str
    pos: str

    @classmethod
    def from_surface(cls, surface: str) -> "TargetWord":
        """Split a surface form like ``plane_nn`` at its final underscore."""
        lemma, sep, pos = surface.rpartition("_")
        if not sep or not lemma or not pos:
            raise ValueError(f"target {surface!r} is not of the form lemma_pos")
        return cls(surface=surface, lemma=lemma, pos=pos)


@dataclass(frozen=True)
class AlignedCorpus:
    """All sentences of one time period, lemma and raw views line-aligned."""

    period_id: str
    sentences: tuple[SentencePair, ...]

    def __len__(self) -> int:
        return len(self.sentences)


def _read_sentences(path) -> list[list[str]]:
    # Strict UTF-8: a bad byte sequence must fail loudly, silent replacement
    # would corrupt token equality.
    text = Path(path).read_text(encoding="utf-8")
    lines = text.split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    sentences = []
    for i, line in enumerate(lines):
        tokens = line.split()
        if not tokens:
            raise CorpusFormatError(f"{path}: line {i + 1} is blank")
        sentences.append(tokens)
    return sentences


def load_corpus_pair(lemma_path, raw_path, period_id: str) -> AlignedCorpus:
    """Load the lemmatized and raw files of one period into an AlignedCorpus.

    Trailing empty lines are ignored in both files. Raises
    LineCountMismatch if the files then disagree on sentence count.
    """
    lemma_sentences = _read_sentences(lemma_path)
    raw_sentences = _read_sentences(raw_path)
    if len(lemma_sentences) != len(raw_sentences):
        raise LineCountMismatch(len(lemma_sentences), len(raw_sentences))
    pairs = tuple(
        SentencePair(index=i, lemma_tokens=tuple(lemma), raw_tokens=tuple(raw))
        for i, (lemma, raw) in enumerate(zip(lemma_sentences, raw_sentences))
    )
    return AlignedCorpus(period_id=period_id, sentences=pairs)


def extract_subcorpus(corpus: AlignedCorpus, target: TargetWord) -> list[SentencePair]:
    """Select the sentences whose lemma tokens contain the target surface form.

    Matching is exact, case-sensitive, whole-token equality against
    ``target.surface`` (so ``plane_nn`` never matches ``planet_nn``).
    Order is preserved; the raw view rides along by index.
    """
    return [s for s in corpus.sentences if target.surface in s.lemma_tokens]


def read_targets(path) -> list[TargetWord]:
    """Read a target list file: one surface form per line, blanks skipped."""
    targets = []
    for raw_line in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw_line.strip()
        if line:
            targets.append(TargetWord.from_surface(line))
    return targets
