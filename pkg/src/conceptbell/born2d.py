"""Two-dimensional real vector model: probabilities as squared cosines.

A unit vector X stands for the item (e.g. "Linda"). Each concept A, B and
their conjunction is a direction in the plane, and the probability of the
concept for the item is cos^2 of the angle to X. Only the principal angle in
[0, 90] degrees is reported; the side of X a vector is drawn on does not
change any probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

ANGLE_DIGITS = 2


def angle_from_probability(p: float) -> float:
    """Principal angle in degrees whose squared cosine is ``p``."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    return math.degrees(math.acos(math.sqrt(p)))


def probability_from_angle(theta: float) -> float:
    if not math.isfinite(theta):
        raise ValueError(f"angle must be finite, got {theta}")
    return math.cos(math.radians(theta)) ** 2


@dataclass(frozen=True)
class BornEntry:
    label: str
    probability: float
    angle: float

    @property
    def rounded_angle(self) -> float:
        return round(self.angle, ANGLE_DIGITS)


@dataclass(frozen=True)
class BornFit:
    item_label: str
    a: BornEntry
    ab: BornEntry
    b: BornEntry

    def __post_init__(self):
        for e in self.entries:
            if not 0.0 <= e.angle <= 90.0:
                raise ValueError(f"{e.label}: angle {e.angle} outside [0, 90]")
            if abs(probability_from_angle(e.angle) - e.probability) > 1e-9:
                raise ValueError(f"{e.label}: angle {e.angle} does not reproduce {e.probability}")

    @property
    def entries(self) -> tuple[BornEntry, BornEntry, BornEntry]:
        return self.a, self.ab, self.b

    def by_probability(self) -> list[BornEntry]:
        return sorted(self.entries, key=lambda e: e.probability, reverse=True)

    def caption(self) -> str:
        # smallest angle first, like the figure captions
        parts = [f"theta(X, {e.label}) = {e.angle:.{ANGLE_DIGITS}f} deg" for e in self.by_probability()]
        return f"{self.item_label}: " + ", ".join(parts)


def fit_item(
    item_label: str,
    p_a: float,
    p_ab: float,
    p_b: float,
    labels: tuple[str, str, str] = ("A", "A and B", "B"),
) -> BornFit:
    """Place A, A-and-B and B at the Born angles their probabilities demand."""
    entries = [
        BornEntry(label, float(p), angle_from_probability(p))
        for label, p in zip(labels, (p_a, p_ab, p_b))
    ]
    return BornFit(item_label, *entries)


def vector(theta: float, side: int = 1) -> tuple[float, float]:
    """Unit vector at ``theta`` degrees from X = (1, 0), on either side of X."""
    r = math.radians(theta)
    return math.cos(r), side * math.sin(r)
