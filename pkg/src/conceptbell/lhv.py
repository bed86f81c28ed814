"""Local hidden-variable oracle for the four full correlations.

A deterministic strategy fixes a +/-1 outcome for each of A, A', B, B'.
Local models are convex mixtures of the 16 strategies, and their
correlation vectors fill a polytope whose facets are the eight CHSH
expressions bounded by 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chsh import CLASSICAL_BOUND, ExpectationSet, chsh_value, chsh_variants

TOLERANCE = 1e-12


@dataclass(frozen=True)
class DeterministicStrategy:
    a: int
    a_prime: int
    b: int
    b_prime: int

    def __post_init__(self):
        for v in (self.a, self.a_prime, self.b, self.b_prime):
            if v not in (-1, 1):
                raise ValueError(f"strategy outcomes must be +1 or -1, got {v}")


def enumerate_strategies() -> list[DeterministicStrategy]:
    return [DeterministicStrategy(*v) for v in itertools.product((1, -1), repeat=4)]


def strategy_expectations(st: DeterministicStrategy) -> ExpectationSet:
    return ExpectationSet(st.a * st.b, st.a * st.b_prime, st.a_prime * st.b, st.a_prime * st.b_prime)


def lhv_chsh_bound() -> int:
    """Largest |S| reachable by a deterministic strategy, found by enumeration."""
    return max(abs(chsh_value(strategy_expectations(st))) for st in enumerate_strategies())


def mixture(weights: Sequence, strategies: Sequence[DeterministicStrategy] | None = None) -> ExpectationSet:
    """Correlations of a convex mixture of strategies (defaults to all 16)."""
    strategies = list(strategies or enumerate_strategies())
    if len(weights) != len(strategies):
        raise ValueError("need one weight per strategy")
    vertices = [strategy_expectations(st).values for st in strategies]
    coords = [sum(w * v[k] for w, v in zip(weights, vertices)) for k in range(4)]
    # float mixtures can stray past +-1 by an ulp
    coords = [c if isinstance(c, (int, Fraction)) else min(1.0, max(-1.0, c)) for c in coords]
    return ExpectationSet(*coords)


@dataclass(frozen=True)
class Facet:
    signs: tuple[int, int, int, int]
    value: object


@dataclass(frozen=True)
class MembershipReport:
    member: bool
    violated_facets: list[Facet]
    facet_values: dict[tuple[int, int, int, int], object]

    def to_dict(self) -> dict:
        return {
            "member": self.member,
            "violated_facets": [
                {"signs": list(f.signs), "value": float(f.value)} for f in self.violated_facets
            ],
        }


def membership_report(es: ExpectationSet) -> MembershipReport:
    values = chsh_variants(es)
    exact = all(isinstance(e, (int, Fraction)) for e in es.values)
    tol = 0 if exact else TOLERANCE
    violated = [Facet(s, v) for s, v in values.items() if abs(v) > CLASSICAL_BOUND + tol]
    return MembershipReport(not violated, violated, values)


def local_membership(es: ExpectationSet) -> bool:
    return membership_report(es).member
