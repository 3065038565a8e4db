"""JSONL interchange format for frame-semantic parses.

This is the contract that decouples the core pipeline from whichever
frame parser produced the annotations. One JSON object per line, UTF-8,
LF line endings, with exactly these fields:

    sentence_index  integer >= 0, position within the target's subcorpus
    text            the parsed sentence
    provenance      "base" | "small" | "skipped"
    frames          [{"frame": str, "trigger_text": str,
                      "elements": [{"role": str, "text": str}]}]

Frame-element fillers are verbatim strings with no character offsets;
that is all the upstream parser provides, and the matching logic
downstream is written against exactly this information. Unknown extra
fields are ignored on read and never emitted on write, so the producer
side may evolve without breaking the core.
"""

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import SchemaError

PROVENANCE_BASE = "base"
PROVENANCE_SMALL = "small"
PROVENANCE_SKIPPED = "skipped"
PROVENANCES = (PROVENANCE_BASE, PROVENANCE_SMALL, PROVENANCE_SKIPPED)


@dataclass(frozen=True)
class FrameElementAnnotation:
    """One frame-element filler: role name plus its raw text span."""

    role: str
    text: str


@dataclass(frozen=True)
class FrameInstance:
    """One evoked frame: name, trigger text, and its element fillers."""

    frame: str
    trigger_text: str
    elements: tuple[FrameElementAnnotation, ...]


@dataclass(frozen=True)
class SentenceParse:
    """Frame annotations for one subcorpus sentence.

    ``provenance`` records which parser variant produced the frames;
    ``skipped`` means both variants failed and ``frames`` is empty.
    """

    sentence_index: int
    text: str
    frames: tuple[FrameInstance, ...]
    provenance: str


@dataclass(frozen=True)
class ParseStats:
    """Counts of fallback and skipped sentences for one parse run."""

    total_sentences: int
    fallback_count: int
    skipped_count: int

    @property
    def fallback_rate(self) -> float:
        return self.fallback_count / self.total_sentences if self.total_sentences else 0.0

    @property
    def skipped_rate(self) -> float:
        return self.skipped_count / self.total_sentences if self.total_sentences else 0.0


def _expect(condition: bool, line_no: int, reason: str) -> None:
    if not condition:
        raise SchemaError(line_no, reason)


def _is_str(value) -> bool:
    return isinstance(value, str)


def _record_to_parse(obj, line_no: int) -> SentenceParse:
    _expect(isinstance(obj, dict), line_no, "record is not a JSON object")

    for field in ("sentence_index", "text", "provenance", "frames"):
        _expect(field in obj, line_no, f"missing field {field!r}")

    index = obj["sentence_index"]
    # bool is an int subclass; reject it explicitly
    _expect(
        isinstance(index, int) and not isinstance(index, bool) and index >= 0,
        line_no,
        "sentence_index must be a non-negative integer",
    )
    _expect(_is_str(obj["text"]), line_no, "text must be a string")

    provenance = obj["provenance"]
    _expect(
        provenance in PROVENANCES,
        line_no,
        f"provenance must be one of {list(PROVENANCES)}, got {provenance!r}",
    )

    raw_frames = obj["frames"]
    _expect(isinstance(raw_frames, list), line_no, "frames must be an array")
    _expect(
        provenance != PROVENANCE_SKIPPED or not raw_frames,
        line_no,
        "skipped sentences must have an empty frames array",
    )

    frames = []
    for raw_frame in raw_frames:
        _expect(isinstance(raw_frame, dict), line_no, "frame entry is not an object")
        for field in ("frame", "trigger_text", "elements"):
            _expect(field in raw_frame, line_no, f"frame entry missing field {field!r}")
        _expect(
            _is_str(raw_frame["frame"]) and raw_frame["frame"] != "",
            line_no,
            "frame name must be a non-empty string",
        )
        _expect(_is_str(raw_frame["trigger_text"]), line_no, "trigger_text must be a string")
        _expect(isinstance(raw_frame["elements"], list), line_no, "elements must be an array")
        elements = []
        for raw_element in raw_frame["elements"]:
            _expect(isinstance(raw_element, dict), line_no, "element entry is not an object")
            for field in ("role", "text"):
                _expect(field in raw_element, line_no, f"element entry missing field {field!r}")
            _expect(
                _is_str(raw_element["role"]) and raw_element["role"] != "",
                line_no,
                "element role must be a non-empty string",
            )
            _expect(
                _is_str(raw_element["text"]) and raw_element["text"] != "",
                line_no,
                "element text must be a non-empty string",
            )
            elements.append(
                FrameElementAnnotation(role=raw_element["role"], text=raw_element["text"])
            )
        frames.append(
            FrameInstance(
                frame=raw_frame["frame"],
                trigger_text=raw_frame["trigger_text"],
                elements=tuple(elements),
            )
        )

    return SentenceParse(
        sentence_index=index,
        text=obj["text"],
        frames=tuple(frames),
        provenance=provenance,
    )


def read_parses(path) -> list[SentenceParse]:
    """Read a JSONL parse file, validating every record against the schema.

    Violations raise SchemaError with the 1-based line number; nothing is
    coerced or silently dropped.
    """
    parses = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(line_no, f"invalid JSON: {exc.msg}") from exc
            parses.append(_record_to_parse(obj, line_no))
    return parses


def _parse_to_record(parse: SentenceParse) -> dict:
    return {
        "sentence_index": parse.sentence_index,
        "text": parse.text,
        "provenance": parse.provenance,
        "frames": [
            {
                "frame": fi.frame,
                "trigger_text": fi.trigger_text,
                "elements": [{"role": el.role, "text": el.text} for el in fi.elements],
            }
            for fi in parse.frames
        ],
    }


def write_parses(parses, path) -> None:
    """Write parses as JSONL; read_parses(write_parses(x)) round-trips losslessly."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for parse in parses:
            fh.write(json.dumps(_parse_to_record(parse), ensure_ascii=False))
            fh.write("\n")


def parse_stats(parses) -> ParseStats:
    """Count fallback (small) and skipped sentences in a parse list."""
    fallback = sum(1 for p in parses if p.provenance == PROVENANCE_SMALL)
    skipped = sum(1 for p in parses if p.provenance == PROVENANCE_SKIPPED)
    return ParseStats(
        total_sentences=len(parses),
        fallback_count=fallback,
        skipped_count=skipped,
    )
