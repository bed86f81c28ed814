"""Classical (set-measure) bounds for a conjunction and overextension checks.

In any Kolmogorovian model the conjunction of two events is bounded by

    max(0, P(A) + P(B) - 1) <= P(A and B) <= min(P(A), P(B)),

so a conjunction judged more probable (or more typical) than one of its
conjuncts cannot come from such a model.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Real
from typing import Sequence

from .ingest import ConjunctionDataset, relative_frequency

TOLERANCE = 1e-12


class Overextension(str, Enum):
    NONE = "none"
    SINGLE_OVER_A = "single_over_a"
    SINGLE_OVER_B = "single_over_b"
    DOUBLE = "double"


def _check_probability(name: str, p) -> None:
    if not 0 <= p <= 1:
        raise ValueError(f"{name} must lie in [0, 1], got {p}")


@dataclass(frozen=True)
class ConjunctionProbabilities:
    p_a: Real
    p_b: Real
    p_ab: Real

    def __post_init__(self):
        for name in ("p_a", "p_b", "p_ab"):
            _check_probability(name, getattr(self, name))

    @property
    def exact(self) -> bool:
        return all(isinstance(p, (int, Fraction)) for p in (self.p_a, self.p_b, self.p_ab))


@dataclass(frozen=True)
class OverextensionVerdict:
    kind: Overextension
    margin_a: Real
    margin_b: Real

    @property
    def margins(self) -> tuple[Real, Real]:
        return self.margin_a, self.margin_b


def kolmogorov_interval(p_a, p_b) -> tuple:
    """Fréchet interval ``(lo, hi)`` that any classical P(A and B) must lie in."""
    _check_probability("p_a", p_a)
    _check_probability("p_b", p_b)
    lo = max(0, p_a + p_b - 1)
    hi = min(p_a, p_b)
    return lo, hi


def classify_overextension(p: ConjunctionProbabilities) -> OverextensionVerdict:
    """Compare P(A and B) with each conjunct.

    A margin of exactly zero does not count as overextension. Exact inputs
    (ints and Fractions) are compared exactly, floats with a 1e-12 slack.
    """
    margin_a = p.p_ab - p.p_a
    margin_b = p.p_ab - p.p_b
    tol = 0 if p.exact else TOLERANCE
    over_a = margin_a > tol
    over_b = margin_b > tol
    if over_a and over_b:
        kind = Overextension.DOUBLE
    elif over_a:
        kind = Overextension.SINGLE_OVER_A
    elif over_b:
        kind = Overextension.SINGLE_OVER_B
    else:
        kind = Overextension.NONE
    return OverextensionVerdict(kind, margin_a, margin_b)


@dataclass(frozen=True)
class FiniteMeasureModel:
    """A probability measure on ``range(len(weights))`` with two events."""

    weights: tuple[float, ...]
    subset_a: frozenset[int]
    subset_b: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "subset_a", frozenset(self.subset_a))
        object.__setattr__(self, "subset_b", frozenset(self.subset_b))
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        if abs(sum(self.weights) - 1) > TOLERANCE:
            raise ValueError(f"weights must sum to 1, got {sum(self.weights)}")
        n = len(self.weights)
        for name in ("subset_a", "subset_b"):
            if any(not 0 <= i < n for i in getattr(self, name)):
                raise ValueError(f"{name} has indices outside range({n})")

    def measure(self, subset: frozenset[int] | set[int]) -> float:
        return sum(self.weights[i] for i in subset)

    @property
    def mu_a(self):
        return self.measure(self.subset_a)

    @property
    def mu_b(self):
        return self.measure(self.subset_b)

    @property
    def mu_ab(self):
        return self.measure(self.subset_a & self.subset_b)

    @property
    def mu_union(self):
        return self.measure(self.subset_a | self.subset_b)

    def probabilities(self) -> ConjunctionProbabilities:
        clip = lambda x: min(max(x, 0), 1)  # noqa: E731
        return ConjunctionProbabilities(clip(self.mu_a), clip(self.mu_b), clip(self.mu_ab))


@dataclass(frozen=True)
class MeasureReport:
    union_ok: bool
    cap_a_ok: bool
    cap_b_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.union_ok and self.cap_a_ok and self.cap_b_ok


def measure_check(m: FiniteMeasureModel) -> MeasureReport:
    """Evaluate subadditivity and monotonicity of the measure on A, B."""
    tol = TOLERANCE
    return MeasureReport(
        union_ok=m.mu_union <= m.mu_a + m.mu_b + tol,
        cap_a_ok=m.mu_ab <= m.mu_a + tol,
        cap_b_ok=m.mu_ab <= m.mu_b + tol,
    )


@dataclass(frozen=True)
class ConjunctionReport:
    dataset: ConjunctionDataset
    probabilities: ConjunctionProbabilities
    verdict: OverextensionVerdict
    interval: tuple
    below_lower: bool
    above_upper: bool

    @property
    def violation(self) -> bool:
        return self.below_lower or self.above_upper


def conjunction_report(d: ConjunctionDataset) -> ConjunctionReport:
    p = ConjunctionProbabilities(
        relative_frequency(d.record_a),
        relative_frequency(d.record_b),
        relative_frequency(d.record_ab),
    )
    lo, hi = kolmogorov_interval(p.p_a, p.p_b)
    return ConjunctionReport(
        dataset=d,
        probabilities=p,
        verdict=classify_overextension(p),
        interval=(lo, hi),
        below_lower=p.p_ab < lo,
        above_upper=p.p_ab > hi,
    )


def swap_verdict(kind: Overextension) -> Overextension:
    """Relabel a verdict after exchanging the roles of A and B."""
    return {
        Overextension.SINGLE_OVER_A: Overextension.SINGLE_OVER_B,
        Overextension.SINGLE_OVER_B: Overextension.SINGLE_OVER_A,
    }.get(kind, kind)


def random_measure_model(rng, n_points: int | None = None) -> FiniteMeasureModel:
    """Draw a random finite measure model; ``rng`` is a numpy Generator."""
    n = int(n_points or rng.integers(1, 9))
    w = rng.dirichlet(rng.uniform(0.2, 3.0, size=n))
    w = w / w.sum()
    a = {i for i in range(n) if rng.random() < 0.5}
    b = {i for i in range(n) if rng.random() < 0.5}
    return FiniteMeasureModel(tuple(float(x) for x in w), a, b)


def atoms_from_probabilities(p_a, p_b, p_ab) -> Sequence:
    """Weights of the four atoms (A&B, A-B, B-A, neither) realising the triple.

    Raises ValueError when the triple is not classically realisable.
    """
    atoms = (p_ab, p_a - p_ab, p_b - p_ab, 1 - p_a - p_b + p_ab)
    if any(w < 0 for w in atoms):
        raise ValueError(f"({p_a}, {p_b}, {p_ab}) has no classical model")
    return atoms
