"""Change scoring, gold-standard evaluation, and quantile agreement grouping.

Scoring compares a target's two period profiles by Jensen-Shannon
divergence; the binary label applies a fixed threshold inclusively
(jsd >= threshold means changed). Evaluation covers the two standard
views: Spearman's rank correlation of the scores against graded gold
judgments, and accuracy against binary gold labels. The grouping step
sorts both rankings and assigns each target to TP / TN / FP / FN / MID
by membership in the top and bottom quantiles of each.
"""

from dataclasses import dataclass
from math import floor, fsum, sqrt
from pathlib import Path

from .collect import FrameProfile
from .corpus import TargetWord
from .divergence import jsd, normalize
from .errors import (
    DegenerateInput,
    FractionOutOfRange,
    KeyMismatch,
    MissingTarget,
)

CHANGED = "changed"
UNCHANGED = "unchanged"

GROUP_TP = "TP"
GROUP_TN = "TN"
GROUP_FP = "FP"
GROUP_FN = "FN"
GROUP_MID = "MID"
GROUPS = (GROUP_TP, GROUP_TN, GROUP_FP, GROUP_FN, GROUP_MID)

DEFAULT_THRESHOLD = 0.5
DEFAULT_GROUP_FRACTION = 1.0 / 3.0


@dataclass(frozen=True)
class ChangeScore:
    target: TargetWord
    jsd: float
    label: str


@dataclass(frozen=True)
class GoldData:
    """Gold annotations: binary change labels and graded change scores."""

    binary: dict[str, int]
    graded: dict[str, float]

    def __post_init__(self):
        _require_same_keys(self.binary, self.graded)


@dataclass(frozen=True)
class PerTargetResult:
    target: str
    jsd: float
    label: str
    gold_binary: int
    gold_graded: float
    group: str


@dataclass(frozen=True)
class EvaluationReport:
    spearman_rho: float
    accuracy: float
    groups: dict[str, str]
    per_target: tuple[PerTargetResult, ...]


def classify(jsd_value: float, threshold: float) -> str:
    """Inclusive threshold: a score exactly at the threshold counts as changed."""
    return CHANGED if jsd_value >= threshold else UNCHANGED


def _require_same_keys(left: dict, right: dict) -> None:
    if left.keys() != right.keys():
        raise KeyMismatch(left.keys() - right.keys(), right.keys() - left.keys())


def score_targets(
    profiles_c1: dict[str, FrameProfile],
    profiles_c2: dict[str, FrameProfile],
    threshold: float = DEFAULT_THRESHOLD,
) -> list[ChangeScore]:
    """Score every target across the two periods.

    Raises MissingTarget if the period maps do not cover the same targets
    and EmptyProfile (with the offending target and period) if a profile
    has no counts.
    """
    for surface in sorted(profiles_c1.keys() | profiles_c2.keys()):
        if surface not in profiles_c2:
            raise MissingTarget(surface, _period_of(profiles_c2))
        if surface not in profiles_c1:
            raise MissingTarget(surface, _period_of(profiles_c1))
    scores = []
    for surface in sorted(profiles_c1):
        profile_c1 = profiles_c1[surface]
        profile_c2 = profiles_c2[surface]
        value = jsd(normalize(profile_c1), normalize(profile_c2))
        scores.append(
            ChangeScore(target=profile_c1.target, jsd=value, label=classify(value, threshold))
        )
    return scores


def _period_of(profiles: dict[str, FrameProfile]) -> str:
    for profile in profiles.values():
        return profile.period_id
    return "?"


def _average_ranks(values: list[float]) -> list[float]:
    """1-based ranks in ascending order of value, ties sharing their average rank."""
    n = len(values)
    order = sorted(range(n), key=lambda i: values[i])
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and values[order[j + 1]] == values[order[i]]:
            j += 1
        average = (i + j) / 2.0 + 1.0
        for k in range(i, j + 1):
            ranks[order[k]] = average
        i = j + 1
    return ranks


def spearman(pred: dict[str, float], gold: dict[str, float]) -> float:
    """Spearman's rho: Pearson correlation of average-rank vectors.

    Raises DegenerateInput when either side is constant, where the
    coefficient is undefined; callers must not read that as zero.
    """
    _require_same_keys(pred, gold)
    if len(pred) < 2:
        raise DegenerateInput(f"need at least 2 targets, got {len(pred)}")
    keys = sorted(pred)
    rank_pred = _average_ranks([pred[k] for k in keys])
    rank_gold = _average_ranks([gold[k] for k in keys])
    if min(rank_pred) == max(rank_pred) or min(rank_gold) == max(rank_gold):
        raise DegenerateInput("rank correlation undefined for a constant ranking")
    n = len(keys)
    mean_pred = fsum(rank_pred) / n
    mean_gold = fsum(rank_gold) / n
    dev_pred = [r - mean_pred for r in rank_pred]
    dev_gold = [r - mean_gold for r in rank_gold]
    covariance = fsum(a * b for a, b in zip(dev_pred, dev_gold))
    variance = fsum(a * a for a in dev_pred) * fsum(b * b for b in dev_gold)
    return covariance / sqrt(variance)


def accuracy(pred_labels: dict[str, int], gold_labels: dict[str, int]) -> float:
    """Fraction of targets whose binary label matches gold."""
    _require_same_keys(pred_labels, gold_labels)
    if not pred_labels:
        raise DegenerateInput("accuracy undefined on an empty target set")
    matches = sum(1 for t, label in pred_labels.items() if label == gold_labels[t])
    return matches / len(pred_labels)


def _ranked(scores: dict[str, float]) -> list[str]:
    # Descending score; ties broken by ascending surface for determinism.
    return sorted(scores, key=lambda t: (-scores[t], t))


def group_targets(
    pred_graded: dict[str, float],
    gold_graded: dict[str, float],
    fraction: float = DEFAULT_GROUP_FRACTION,
) -> dict[str, str]:
    """Assign each target to TP / TN / FP / FN / MID.

    With n targets and k = floor(n * fraction): TP sits in the top k of
    both rankings, TN in the bottom k of both, FP in the gold bottom but
    predicted top, FN in the gold top but predicted bottom, and the rest
    is MID. Requires at least 3 targets.
    """
    _require_same_keys(pred_graded, gold_graded)
    if not 0.0 < fraction <= 0.5:
        raise FractionOutOfRange(fraction)
    n = len(pred_graded)
    k = floor(n * fraction)
    pred_order = _ranked(pred_graded)
    gold_order = _ranked(gold_graded)
    pred_top = set(pred_order[:k])
    pred_bottom = set(pred_order[n - k:]) if k > 0 else set()
    gold_top = set(gold_order[:k])
    gold_bottom = set(gold_order[n - k:]) if k > 0 else set()
    groups = {}
    for target in pred_graded:
        in_pred_top, in_pred_bottom = target in pred_top, target in pred_bottom
        in_gold_top, in_gold_bottom = target in gold_top, target in gold_bottom
        if in_gold_top and in_pred_top:
            groups[target] = GROUP_TP
        elif in_gold_bottom and in_pred_bottom:
            groups[target] = GROUP_TN
        elif in_gold_bottom and in_pred_top:
            groups[target] = GROUP_FP
        elif in_gold_top and in_pred_bottom:
            groups[target] = GROUP_FN
        else:
            groups[target] = GROUP_MID
    return groups


def compare_raw_lemma(profile_raw: FrameProfile, profile_lemma: FrameProfile) -> float:
    """Divergence between the raw-corpus and lemma-corpus profiles of one target."""
    if profile_raw.target.surface != profile_lemma.target.surface:
        raise ValueError(
            f"profiles describe different targets: {profile_raw.target.surface!r} "
            f"vs {profile_lemma.target.surface!r}"
        )
    if profile_raw.period_id != profile_lemma.period_id:
        raise ValueError(
            f"profiles describe different periods: {profile_raw.period_id!r} "
            f"vs {profile_lemma.period_id!r}"
        )
    return jsd(normalize(profile_raw), normalize(profile_lemma))


def evaluate_scores(
    scores: list[ChangeScore],
    gold: GoldData,
    fraction: float = DEFAULT_GROUP_FRACTION,
) -> EvaluationReport:
    """Full evaluation of a score list against gold annotations."""
    pred_graded = {s.target.surface: s.jsd for s in scores}
    _require_same_keys(pred_graded, gold.binary)
    pred_binary = {s.target.surface: 1 if s.label == CHANGED else 0 for s in scores}
    rho = spearman(pred_graded, gold.graded)
    acc = accuracy(pred_binary, gold.binary)
    groups = group_targets(pred_graded, gold.graded, fraction)
    by_score = sorted(scores, key=lambda s: (-s.jsd, s.target.surface))
    per_target = tuple(
        PerTargetResult(
            target=s.target.surface,
            jsd=s.jsd,
            label=s.label,
            gold_binary=gold.binary[s.target.surface],
            gold_graded=gold.graded[s.target.surface],
            group=groups[s.target.surface],
        )
        for s in by_score
    )
    return EvaluationReport(spearman_rho=rho, accuracy=acc, groups=groups, per_target=per_target)


def _read_gold_column(path, parse_value):
    values = {}
    for line_no, raw_line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw_line.strip()
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"{path}: line {line_no}: expected 'target<TAB>value'")
        values[parts[0]] = parse_value(parts[1])
    return values


def read_gold_binary(path) -> dict[str, int]:
    """SemEval layout: ``target<TAB>label`` with label 0 or 1."""

    def parse_label(text: str) -> int:
        label = int(text)
        if label not in (0, 1):
            raise ValueError(f"binary gold label must be 0 or 1, got {text!r}")
        return label

    return _read_gold_column(path, parse_label)


def read_gold_graded(path) -> dict[str, float]:
    """SemEval layout: ``target<TAB>score`` with a real-valued score."""
    return _read_gold_column(path, float)


def load_gold(binary_path, graded_path) -> GoldData:
    return GoldData(binary=read_gold_binary(binary_path), graded=read_gold_graded(graded_path))
