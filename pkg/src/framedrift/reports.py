"""Report tables for scores and per-frame decompositions.

All delimited output is TSV, UTF-8, LF, no quoting (frame names contain
no tabs). Floats are written with 6 decimal places so reruns are
byte-identical; deltas carry an explicit sign because downstream
rendering colors rising and falling frames differently.
"""

import json
from dataclasses import dataclass
from pathlib import Path

from .collect import FrameProfile
from .detect import ChangeScore
from .divergence import decompose, normalize


@dataclass(frozen=True)
class DecompositionRow:
    frame: str
    contribution: float
    delta: float
    count_c1: int
    count_c2: int
    relfreq_c1: float
    relfreq_c2: float


@dataclass(frozen=True)
class DecompositionReport:
    """Per-frame attribution of one target's change score."""

    target: str
    period_c1: str
    period_c2: str
    total: float
    rows: tuple[DecompositionRow, ...]


def build_decomposition_report(
    profile_c1: FrameProfile, profile_c2: FrameProfile
) -> DecompositionReport:
    """Decompose the divergence between two period profiles into table rows.

    Rows are sorted by contribution descending (frame name breaks ties),
    and their contributions sum to the total score.
    """
    p = normalize(profile_c1)
    q = normalize(profile_c2)
    decomposition = decompose(p, q)
    rows = [
        DecompositionRow(
            frame=name,
            contribution=item.contribution,
            delta=item.delta,
            count_c1=profile_c1.counts.get(name, 0),
            count_c2=profile_c2.counts.get(name, 0),
            relfreq_c1=p.probs.get(name, 0.0),
            relfreq_c2=q.probs.get(name, 0.0),
        )
        for name, item in decomposition.items.items()
    ]
    rows.sort(key=lambda r: (-r.contribution, r.frame))
    return DecompositionReport(
        target=profile_c1.target.surface,
        period_c1=profile_c1.period_id,
        period_c2=profile_c2.period_id,
        total=decomposition.total,
        rows=tuple(rows),
    )


DECOMPOSITION_HEADER = (
    "frame",
    "contribution",
    "delta",
    "count_c1",
    "count_c2",
    "relfreq_c1",
    "relfreq_c2",
)


def decomposition_to_tsv(report: DecompositionReport) -> str:
    lines = ["\t".join(DECOMPOSITION_HEADER)]
    for row in report.rows:
        lines.append(
            "\t".join(
                (
                    row.frame,
                    f"{row.contribution:.6f}",
                    f"{row.delta:+.6f}",
                    str(row.count_c1),
                    str(row.count_c2),
                    f"{row.relfreq_c1:.6f}",
                    f"{row.relfreq_c2:.6f}",
                )
            )
        )
    return "\n".join(lines) + "\n"


def decomposition_to_json(report: DecompositionReport) -> str:
    record = {
        "target": report.target,
        "period_c1": report.period_c1,
        "period_c2": report.period_c2,
        "total_jsd": report.total,
        "frames": [
            {
                "frame": row.frame,
                "contribution": row.contribution,
                "delta": row.delta,
                "count_c1": row.count_c1,
                "count_c2": row.count_c2,
                "relfreq_c1": row.relfreq_c1,
                "relfreq_c2": row.relfreq_c2,
            }
            for row in report.rows
        ],
    }
    return json.dumps(record, ensure_ascii=False, indent=2) + "\n"


def scores_to_tsv(scores: list[ChangeScore]) -> str:
    """``target<TAB>jsd<TAB>label`` rows, sorted by score descending."""
    ordered = sorted(scores, key=lambda s: (-s.jsd, s.target.surface))
    return "".join(f"{s.target.surface}\t{s.jsd:.6f}\t{s.label}\n" for s in ordered)


def read_scores_tsv(path) -> list[tuple[str, float, str]]:
    rows = []
    for raw_line in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw_line.strip()
        if not line:
            continue
        surface, jsd_text, label = line.split("\t")
        rows.append((surface, float(jsd_text), label))
    return rows
