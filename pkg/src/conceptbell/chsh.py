"""CHSH pipeline from raw coincidence counts.

Each of the four experiments yields four relative frequencies (one per
outcome pair). They are normalised within the experiment by their sum and
turned into a correlation

    E = P(1,1) - P(1,2) - P(2,1) + P(2,2)

with the first outcome of each setting valued +1 and the second -1. The
CHSH statistic is S = E(A',B') + E(A,B') + E(A',B) - E(A,B). Everything is
kept as exact fractions when the inputs are counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from numbers import Real

from .ingest import EXPERIMENT_KEYS, ChshSuite, CoincidenceDataset, relative_frequency

TSIRELSON = 2 * math.sqrt(2)
CLASSICAL_BOUND = 2


class DegenerateExperimentError(ValueError):
    """No cell of an experiment was ever observed, so it cannot be normalised."""


class Verdict(str, Enum):
    CLASSICAL = "classical"
    QUANTUM_VIOLATION = "quantum_violation"
    SUPERQUANTUM = "superquantum"


@dataclass(frozen=True)
class JointProbabilities:
    p11: Real
    p12: Real
    p21: Real
    p22: Real
    normalized: bool = False

    def __post_init__(self):
        for name in ("p11", "p12", "p21", "p22"):
            p = getattr(self, name)
            if not 0 <= p <= 1:
                raise ValueError(f"{name} must lie in [0, 1], got {p}")
        if self.normalized and abs(self.total - 1) > 1e-9:
            raise ValueError(f"normalized cells must sum to 1, got {self.total}")

    @property
    def cells(self) -> tuple[Real, Real, Real, Real]:
        return self.p11, self.p12, self.p21, self.p22

    @property
    def total(self):
        return sum(self.cells)


@dataclass(frozen=True)
class ExpectationSet:
    e_ab: Real
    e_abp: Real
    e_apb: Real
    e_apbp: Real

    def __post_init__(self):
        for name, e in zip(("e_ab", "e_abp", "e_apb", "e_apbp"), self.values):
            if not -1 <= e <= 1:
                raise ValueError(f"{name} must lie in [-1, 1], got {e}")

    @property
    def values(self) -> tuple[Real, Real, Real, Real]:
        return self.e_ab, self.e_abp, self.e_apb, self.e_apbp

    def as_floats(self) -> tuple[float, float, float, float]:
        return tuple(float(e) for e in self.values)


@dataclass(frozen=True)
class ExperimentTrace:
    raw: JointProbabilities
    normalization_sum: Real
    normalized: JointProbabilities
    expectation: Real


@dataclass(frozen=True)
class ChshResult:
    s_value: Real
    verdict: Verdict
    expectations: ExpectationSet
    normalization_sums: dict[str, Real] = field(default_factory=dict)
    traces: dict[str, ExperimentTrace] = field(default_factory=dict)


def raw_joint(d: CoincidenceDataset) -> JointProbabilities:
    return JointProbabilities(*(relative_frequency(d.cell(i, j)) for i in (1, 2) for j in (1, 2)))


def normalize(jp: JointProbabilities) -> tuple[JointProbabilities, Real]:
    """Divide each cell by the cell sum; returns the normalised joint and the sum."""
    s = jp.total
    if s == 0:
        raise DegenerateExperimentError("all four cells are zero; experiment cannot be normalized")
    return JointProbabilities(*(p / s for p in jp.cells), normalized=True), s


def expectation(jp: JointProbabilities):
    if not jp.normalized:
        raise ValueError("expectation needs normalized joint probabilities")
    return jp.p11 - jp.p12 - jp.p21 + jp.p22


def classify(s) -> Verdict:
    """Classify on |S|; exact inputs are compared exactly against 2*sqrt(2)."""
    a = abs(s)
    if a <= CLASSICAL_BOUND:
        return Verdict.CLASSICAL
    if isinstance(a, (int, Fraction)):
        beyond = a * a > 8
    else:
        beyond = a > TSIRELSON
    return Verdict.SUPERQUANTUM if beyond else Verdict.QUANTUM_VIOLATION


def chsh_value(es: ExpectationSet):
    return es.e_apbp + es.e_abp + es.e_apb - es.e_ab


def chsh_statistic(es: ExpectationSet) -> ChshResult:
    s = chsh_value(es)
    return ChshResult(s, classify(s), es)


def degenerate_identity_check(e):
    """CHSH value when A' = A and B' = B: all four terms equal, leaving 2E."""
    if not -1 <= e <= 1:
        raise ValueError(f"expectation must lie in [-1, 1], got {e}")
    return 2 * e


def trace_experiment(d: CoincidenceDataset) -> ExperimentTrace:
    raw = raw_joint(d)
    norm, s = normalize(raw)
    return ExperimentTrace(raw, s, norm, expectation(norm))


def run_suite(suite: ChshSuite) -> ChshResult:
    traces = {}
    for key in EXPERIMENT_KEYS:
        try:
            traces[key] = trace_experiment(suite[key])
        except DegenerateExperimentError as exc:
            raise DegenerateExperimentError(f"experiment {key}: {exc}") from None
    es = ExpectationSet(*(traces[k].expectation for k in EXPERIMENT_KEYS))
    result = chsh_statistic(es)
    return ChshResult(
        result.s_value,
        result.verdict,
        es,
        {k: t.normalization_sum for k, t in traces.items()},
        traces,
    )


# Outcome relabelling: swapping the two outcomes of one setting flips the
# sign of the two correlations that involve it.
RELABEL_FLIPS = {
    "A": (0, 1),
    "A'": (2, 3),
    "B": (0, 2),
    "B'": (1, 3),
}


def relabel(es: ExpectationSet, setting: str) -> ExpectationSet:
    flips = RELABEL_FLIPS[setting]
    return ExpectationSet(*(-e if i in flips else e for i, e in enumerate(es.values)))


def swap_settings(es: ExpectationSet, side: str) -> ExpectationSet:
    """Exchange A with A' (``side="A"``) or B with B' (``side="B"``)."""
    ab, abp, apb, apbp = es.values
    if side == "A":
        return ExpectationSet(apb, apbp, ab, abp)
    if side == "B":
        return ExpectationSet(abp, ab, apbp, apb)
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def chsh_variants(es: ExpectationSet) -> dict[tuple[int, int, int, int], Real]:
    """All eight CHSH expressions (odd number of minus signs) keyed by sign vector."""
    out = {}
    for signs in _odd_sign_vectors():
        out[signs] = sum(sg * e for sg, e in zip(signs, es.values))
    return out


def max_chsh(es: ExpectationSet):
    """Largest |S| over all outcome relabellings."""
    return max(abs(v) for v in chsh_variants(es).values())


def _odd_sign_vectors():
    for bits in range(16):
        signs = tuple(-1 if bits >> k & 1 else 1 for k in range(4))
        if signs.count(-1) % 2 == 1:
            yield signs
