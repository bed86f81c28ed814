import itertools
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from conceptbell.chsh import ExpectationSet, chsh_value, relabel, swap_settings
from conceptbell.lhv import (
    DeterministicStrategy,
    enumerate_strategies,
    lhv_chsh_bound,
    local_membership,
    membership_report,
    mixture,
    strategy_expectations,
)

REPORTED = ExpectationSet(-0.9385, 0.2376, 0.4675, 0.7671)
VERTICES = np.array([strategy_expectations(s).values for s in enumerate_strategies()], dtype=float)


def lp_member(es: ExpectationSet) -> bool:
    """Convex-hull membership by linear feasibility over the 16 vertices."""
    a_eq = np.vstack([VERTICES.T, np.ones(16)])
    b_eq = np.append(es.as_floats(), 1.0)
    res = linprog(np.zeros(16), A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * 16, method="highs")
    return res.status == 0


class TestStrategies:
    def test_count_and_distinct(self):
        strategies = enumerate_strategies()
        assert len(strategies) == 16 == len(set(strategies))

    def test_extremes_present(self):
        strategies = enumerate_strategies()
        assert DeterministicStrategy(1, 1, 1, 1) in strategies
        assert DeterministicStrategy(-1, -1, -1, -1) in strategies

    def test_sign_flip_closure(self):
        strategies = set(enumerate_strategies())
        for s in strategies:
            assert DeterministicStrategy(-s.a, -s.a_prime, -s.b, -s.b_prime) in strategies

    def test_invalid(self):
        with pytest.raises(ValueError):
            DeterministicStrategy(1, 0, 1, 1)

    def test_expectations(self):
        assert strategy_expectations(DeterministicStrategy(1, 1, 1, 1)).values == (1, 1, 1, 1)
        assert strategy_expectations(DeterministicStrategy(1, -1, 1, -1)).values == (1, -1, -1, 1)

    def test_product_structure(self):
        for s in enumerate_strategies():
            e = strategy_expectations(s)
            assert e.e_ab * e.e_apbp == e.e_abp * e.e_apb


class TestBound:
    def test_bound_is_two(self):
        bound = lhv_chsh_bound()
        assert bound == 2 and isinstance(bound, int)

    def test_every_strategy_at_plus_minus_two(self):
        for s in enumerate_strategies():
            value = chsh_value(strategy_expectations(s))
            assert value in (-2, 2)
            assert value == s.a_prime * (s.b + s.b_prime) + s.a * (s.b_prime - s.b)

    def test_mixture_linearity(self):
        plus = next(s for s in enumerate_strategies() if chsh_value(strategy_expectations(s)) == 2)
        minus = next(s for s in enumerate_strategies() if chsh_value(strategy_expectations(s)) == -2)
        es = mixture([F(1, 2), F(1, 2)], [plus, minus])
        assert chsh_value(es) == 0


class TestMembership:
    def test_reported_set_not_local(self):
        rep = membership_report(REPORTED)
        assert not rep.member
        values = [float(f.value) for f in rep.violated_facets]
        assert any(abs(v - 2.4107) <= 5e-4 for v in values)
        assert not lp_member(REPORTED)

    def test_origin(self):
        assert local_membership(ExpectationSet(0, 0, 0, 0))

    def test_vertices_are_members(self):
        for s in enumerate_strategies():
            assert local_membership(strategy_expectations(s))

    def test_report_dict(self):
        d = membership_report(REPORTED).to_dict()
        assert d["member"] is False
        assert {"signs": [-1, 1, 1, 1], "value": pytest.approx(2.4107)} in d["violated_facets"]

    def test_random_mixtures(self, rng):
        for _ in range(10_000):
            w = rng.dirichlet(np.full(16, rng.uniform(0.05, 2.0)))
            assert local_membership(mixture(list(w)))

    def test_facets_agree_with_lp(self, rng):
        for _ in range(300):
            es = ExpectationSet(*rng.uniform(-1, 1, size=4))
            assert local_membership(es) == lp_member(es)

    def test_separating_facet_for_non_members(self, rng):
        checked = 0
        for _ in range(2000):
            es = ExpectationSet(*rng.uniform(-1, 1, size=4))
            rep = membership_report(es)
            if rep.member:
                continue
            checked += 1
            for facet in rep.violated_facets:
                # a hyperplane every vertex satisfies but es does not
                assert abs(facet.value) > 2
                vertex_values = VERTICES @ np.array(facet.signs)
                assert np.all(np.abs(vertex_values) <= 2)
        assert checked > 100

    @settings(max_examples=200)
    @given(st.lists(st.floats(-1, 1), min_size=4, max_size=4))
    def test_symmetry_invariance(self, values):
        es = ExpectationSet(*values)
        member = local_membership(es)
        for name in ("A", "A'", "B", "B'"):
            assert local_membership(relabel(es, name)) == member
        assert local_membership(swap_settings(es, "A")) == member
        assert local_membership(swap_settings(es, "B")) == member

    def test_exact_boundary(self):
        assert local_membership(ExpectationSet(-1, 1, 1, -1))
        assert not local_membership(ExpectationSet(-1, 1, 1, 0))
        assert local_membership(ExpectationSet(F(-1, 2), F(1, 2), F(1, 2), F(1, 2)))
        assert not local_membership(ExpectationSet(F(-1, 2), F(1, 2), F(1, 2), F(1, 2) + F(1, 10**9)))
