import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conceptbell.born2d import BornEntry, BornFit, angle_from_probability, fit_item, probability_from_angle
from conceptbell.classical import ConjunctionProbabilities, Overextension, classify_overextension


def oracle_angle(p):
    # independent of acos: the angle whose cosine is sqrt(p) and sine sqrt(1-p)
    return math.degrees(math.atan2(math.sqrt(1 - p), math.sqrt(p)))


@pytest.mark.parametrize(
    "p,expected",
    [(0.7, 33.21), (0.9, 18.43), (0.4, 50.77), (0.05, 77.08)],
)
def test_reported_angles(p, expected):
    assert angle_from_probability(p) == pytest.approx(expected, abs=0.005)


def test_frozen_oracle_values():
    # computed with oracle_angle
    frozen = {0.05: 77.07903361841643, 0.4: 50.768479516407744, 0.7: 33.21091076089909, 0.9: 18.43494882292201}
    for p, angle in frozen.items():
        assert angle_from_probability(p) == pytest.approx(angle, abs=1e-9)


def test_endpoints():
    assert angle_from_probability(1.0) == 0.0
    assert angle_from_probability(0.0) == 90.0


@pytest.mark.parametrize("p", [-0.01, 1.01, float("nan")])
def test_domain(p):
    with pytest.raises(ValueError):
        angle_from_probability(p)


def test_probability_from_angle():
    assert probability_from_angle(77.08) == pytest.approx(0.05, abs=1e-4)
    assert probability_from_angle(45) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        probability_from_angle(float("inf"))


@given(st.floats(-720, 720))
def test_angle_symmetries(theta):
    p = probability_from_angle(theta)
    assert probability_from_angle(theta + 180) == pytest.approx(p, abs=1e-12)
    assert probability_from_angle(-theta) == pytest.approx(p, abs=1e-12)


def test_round_trip_sampled(rng):
    for p in rng.uniform(0, 1, size=1000):
        assert probability_from_angle(angle_from_probability(p)) == pytest.approx(p, abs=1e-12)


def test_matches_oracle_sampled(rng):
    for p in np.concatenate([rng.uniform(0, 1, 500), [0.0, 1.0]]):
        assert abs(angle_from_probability(p) - oracle_angle(p)) < 0.005


@given(st.floats(0, 1), st.floats(0, 1))
def test_strictly_decreasing(p, q):
    # strict on the reals; floats closer than this can share an angle
    if p < q - 1e-9:
        assert angle_from_probability(p) > angle_from_probability(q)
    elif p <= q:
        assert angle_from_probability(p) >= angle_from_probability(q)


class TestFitItem:
    def test_linda(self):
        f = fit_item("Linda", 0.05, 0.4, 0.7)
        assert [round(e.angle, 2) for e in f.entries] == [77.08, 50.77, 33.21]

    def test_guppy(self):
        f = fit_item("Guppy", 0.4, 0.9, 0.7, labels=("Pet", "Pet-Fish", "Fish"))
        assert [round(e.angle, 2) for e in f.entries] == [50.77, 18.43, 33.21]
        assert f.caption() == (
            "Guppy: theta(X, Pet-Fish) = 18.43 deg, theta(X, Fish) = 33.21 deg, theta(X, Pet) = 50.77 deg"
        )

    def test_identity(self):
        f = fit_item("X", 1, 1, 1)
        assert [e.angle for e in f.entries] == [0.0, 0.0, 0.0]

    def test_domain_propagates(self):
        with pytest.raises(ValueError):
            fit_item("X", 0.5, 1.2, 0.5)

    def test_rejects_inconsistent_entry(self):
        with pytest.raises(ValueError):
            BornFit("X", BornEntry("A", 0.5, 10.0), BornEntry("AB", 1.0, 0.0), BornEntry("B", 1.0, 0.0))

    @given(st.floats(0, 1), st.floats(0, 1), st.floats(0, 1))
    def test_ordering_invariant(self, a, ab, b):
        f = fit_item("X", a, ab, b)
        ordered = f.by_probability()
        angles = [e.angle for e in ordered]
        assert angles == sorted(angles)
        for e in f.entries:
            assert math.cos(math.radians(e.angle)) ** 2 == pytest.approx(e.probability, abs=1e-9)

    @given(st.floats(0, 1), st.floats(0, 1), st.floats(0, 1))
    def test_double_overextension_mirrors_angles(self, a, b, ab):
        v = classify_overextension(ConjunctionProbabilities(a, b, ab))
        if v.kind is Overextension.DOUBLE and min(v.margins) > 1e-9:
            f = fit_item("X", a, ab, b)
            assert f.ab.angle < f.a.angle
            assert f.ab.angle < f.b.angle
