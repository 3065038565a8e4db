"""Turn a target's parsed subcorpus into a frame profile.

A frame instance qualifies for the profile when the target participates
in it, and the two collection modes differ only in what counts as
participation:

    FE    the target appears in at least one frame element
    FTFE  as FE, or the target is the frame trigger

Dedup rules, applied per frame instance: an instance contributes at most
1 to its frame's count, even if the target is both the trigger and an
element, or sits in several elements. At the sentence level every
qualifying instance counts, including repeated instances of the same
frame name in one sentence.
"""

import json
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .corpus import TargetWord
from .parses import FrameElementAnnotation, SentenceParse

ELEMENT_MATCH_MODES = ("token", "substring")
MATCH_FORMS = ("surface", "bare")


class CollectionMode(Enum):
    FE = "fe"
    FTFE = "ftfe"


@dataclass(frozen=True)
class FrameProfile:
    """Frame-name -> count map for one (target, period, mode)."""

    target: TargetWord
    period_id: str
    mode: CollectionMode
    counts: dict[str, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def _needle(target: TargetWord, match_form: str) -> str:
    if match_form not in MATCH_FORMS:
        raise ValueError(f"match_form must be one of {MATCH_FORMS}, got {match_form!r}")
    return target.surface if match_form == "surface" else target.lemma


def is_trigger_match(target: TargetWord, trigger_text: str, match_form: str = "surface") -> bool:
    """True if the trigger is the target, or a multi-word trigger containing it."""
    needle = _needle(target, match_form)
    return trigger_text == needle or needle in trigger_text.split()


def is_element_match(
    target: TargetWord,
    element: FrameElementAnnotation,
    element_match: str = "token",
    match_form: str = "surface",
) -> bool:
    """True if the target occurs in the element's filler text.

    ``token`` mode requires whole-token membership (``plane_nn`` never
    matches inside ``planet_nn``); ``substring`` mode is plain containment,
    kept as a switch for replication studies.
    """
    if element_match not in ELEMENT_MATCH_MODES:
        raise ValueError(
            f"element_match must be one of {ELEMENT_MATCH_MODES}, got {element_match!r}"
        )
    needle = _needle(target, match_form)
    if element_match == "substring":
        return needle in element.text
    return needle in element.text.split()


def _instance_qualifies(
    target: TargetWord,
    frame_instance,
    mode: CollectionMode,
    element_match: str,
    match_form: str,
) -> bool:
    if mode is CollectionMode.FTFE and is_trigger_match(
        target, frame_instance.trigger_text, match_form
    ):
        return True
    return any(
        is_element_match(target, element, element_match, match_form)
        for element in frame_instance.elements
    )


def collect_frames(
    parses: list[SentenceParse],
    target: TargetWord,
    mode: CollectionMode,
    period_id: str = "",
    element_match: str = "token",
    match_form: str = "surface",
) -> FrameProfile:
    """Count qualifying frame instances over a target's parsed subcorpus.

    Pure function of its inputs; sentence order does not affect the counts.
    Skipped sentences carry no frames and contribute nothing.
    """
    counts: Counter[str] = Counter()
    for parse in parses:
        for frame_instance in parse.frames:
            if _instance_qualifies(target, frame_instance, mode, element_match, match_form):
                counts[frame_instance.frame] += 1
    return FrameProfile(
        target=target,
        period_id=period_id,
        mode=mode,
        counts={name: n for name, n in counts.items() if n > 0},
    )


def write_profile(profile: FrameProfile, path) -> None:
    """Serialize a profile as JSON with counts sorted by frame name."""
    record = {
        "target": profile.target.surface,
        "period": profile.period_id,
        "mode": profile.mode.value,
        "total": profile.total,
        "counts": {name: profile.counts[name] for name in sorted(profile.counts)},
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(record, fh, ensure_ascii=False, indent=2)
        fh.write("\n")


def read_profile(path) -> FrameProfile:
    """Read a profile written by write_profile."""
    with open(path, encoding="utf-8") as fh:
        record = json.load(fh)
    return FrameProfile(
        target=TargetWord.from_surface(record["target"]),
        period_id=record["period"],
        mode=CollectionMode(record["mode"]),
        counts={str(name): int(count) for name, count in record["counts"].items()},
    )
