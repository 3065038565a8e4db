"""Jensen-Shannon divergence at log base 2, with per-frame decomposition.

With M = (P + Q) / 2 over the union support and 0 * log 0 := 0,

    JSD(P, Q) = 1/2 KL(P || M) + 1/2 KL(Q || M)

which at log base 2 is bounded in [0, 1]. The score splits exactly into
one non-negative term per frame,

    c_f = 1/2 (p_f log2(p_f / m_f) + q_f log2(q_f / m_f)),

so the total can be attributed frame by frame. Accumulation uses
math.fsum over the sorted union support: summation is compensated and
its order fixed, so results are deterministic and jsd(p, q) == jsd(q, p)
holds exactly.
"""

from dataclasses import dataclass
from math import fsum, log2

from .collect import FrameProfile
from .errors import EmptyProfile

SUM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class FrameDistribution:
    """Frame-name -> probability map; strictly positive, sums to 1."""

    probs: dict[str, float]

    def __post_init__(self):
        if any(p <= 0.0 for p in self.probs.values()):
            raise ValueError("zero-mass frames must be omitted, not stored")
        total = fsum(self.probs.values())
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise ValueError(f"probabilities sum to {total!r}, not 1")

    @property
    def support(self) -> frozenset[str]:
        return frozenset(self.probs)


@dataclass(frozen=True)
class DecompositionItem:
    """One frame's share: its divergence contribution and q - p frequency delta."""

    contribution: float
    delta: float


@dataclass(frozen=True)
class Decomposition:
    """Per-frame contributions; they sum to the total divergence."""

    total: float
    items: dict[str, DecompositionItem]


def normalize(profile: FrameProfile) -> FrameDistribution:
    """Turn counts into relative frequencies; empty profiles cannot be scored."""
    total = profile.total
    if total == 0:
        raise EmptyProfile(profile.target.surface, profile.period_id)
    return FrameDistribution(
        {name: count / total for name, count in profile.counts.items() if count}
    )


def _item_term(pf: float, qf: float) -> float:
    # Non-negative by the log-sum inequality; exactly 0.0 when pf == qf.
    mf = 0.5 * (pf + qf)
    term = 0.0
    if pf > 0.0:
        term += pf * log2(pf / mf)
    if qf > 0.0:
        term += qf * log2(qf / mf)
    return 0.5 * term


def _clamp_unit(value: float) -> float:
    # The true value lies in [0, 1]; rounding of the accumulated terms can
    # overshoot by a few ulp (e.g. disjoint supports whose normalized
    # probabilities sum to 1 + 1e-16).
    return min(max(value, 0.0), 1.0)


def jsd(p: FrameDistribution, q: FrameDistribution) -> float:
    """Jensen-Shannon divergence in [0, 1]; symmetric and 0 iff p == q."""
    names = sorted(p.probs.keys() | q.probs.keys())
    return _clamp_unit(
        fsum(_item_term(p.probs.get(f, 0.0), q.probs.get(f, 0.0)) for f in names)
    )


def decompose(p: FrameDistribution, q: FrameDistribution) -> Decomposition:
    """Split jsd(p, q) into per-frame contributions plus frequency deltas.

    The total is accumulated from the identical terms in the identical
    order as jsd(), so decompose(p, q).total == jsd(p, q) exactly.
    """
    names = sorted(p.probs.keys() | q.probs.keys())
    items = {}
    for name in names:
        pf = p.probs.get(name, 0.0)
        qf = q.probs.get(name, 0.0)
        items[name] = DecompositionItem(contribution=_item_term(pf, qf), delta=qf - pf)
    total = fsum(item.contribution for item in items.values())
    return Decomposition(total=total, items=items)
