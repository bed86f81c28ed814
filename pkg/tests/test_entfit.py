import math

import numpy as np
import pytest

from conceptbell.chsh import ExpectationSet, chsh_value
from conceptbell.entfit import (
    TSIRELSON_ANGLES,
    AngleSet,
    fit,
    grid_losses,
    loss,
    loss_gradient,
    model_expectations,
    random_angles,
)

REPORTED = ExpectationSet(-0.9385, 0.2376, 0.4675, 0.7671)


def central_difference(ang: AngleSet, target, h=1e-6):
    x = ang.as_array()
    grad = np.zeros(4)
    for k in range(4):
        up, down = x.copy(), x.copy()
        up[k] += h
        down[k] -= h
        grad[k] = (loss(AngleSet.from_array(up), target) - loss(AngleSet.from_array(down), target)) / (2 * h)
    return grad


class TestModel:
    def test_equal_angles(self):
        es = model_expectations(AngleSet(1.3, 1.3, 1.3, 1.3))
        assert es.values == pytest.approx((-1, -1, -1, -1))
        assert chsh_value(es) == pytest.approx(-2)

    def test_tsirelson_configuration(self):
        es = model_expectations(TSIRELSON_ANGLES)
        h = 1 / math.sqrt(2)
        assert es.values == pytest.approx((-h, h, h, h), abs=1e-12)
        assert abs(chsh_value(es) - 2 * math.sqrt(2)) < 1e-9

    def test_gauge_symmetry(self, rng):
        for _ in range(50):
            ang = random_angles(rng)
            c = rng.uniform(-10, 10)
            assert model_expectations(ang.shifted(c)).values == pytest.approx(model_expectations(ang).values, abs=1e-12)

    def test_angles_wrapped(self):
        ang = AngleSet(-math.pi / 4, 7.0, 0.0, 2 * math.pi)
        for v in (ang.alpha_a, ang.alpha_ap, ang.beta_b, ang.beta_bp):
            assert 0 <= v < 2 * math.pi
        with pytest.raises(ValueError):
            AngleSet(float("nan"), 0, 0, 0)

    def test_tsirelson_ceiling_random(self, rng):
        for _ in range(2000):
            es = model_expectations(random_angles(rng))
            assert abs(chsh_value(es)) <= 2 * math.sqrt(2) + 1e-9


class TestLoss:
    def test_zero_at_own_model(self, rng):
        ang = random_angles(rng)
        assert loss(ang, model_expectations(ang)) == pytest.approx(0, abs=1e-28)

    def test_gradient_matches_finite_differences(self, rng):
        for _ in range(100):
            ang = random_angles(rng)
            target = ExpectationSet(*rng.uniform(-1, 1, size=4))
            g = loss_gradient(ang, target)
            fd = central_difference(ang, target)
            assert np.linalg.norm(g - fd) <= 1e-6 * np.linalg.norm(g)

    def test_gradient_sums_to_zero(self, rng):
        # shifting every angle leaves the loss unchanged
        ang = random_angles(rng)
        target = ExpectationSet(*rng.uniform(-1, 1, size=4))
        assert loss_gradient(ang, target).sum() == pytest.approx(0, abs=1e-12)

    def test_global_shift(self, rng):
        for _ in range(20):
            ang = random_angles(rng)
            t = model_expectations(random_angles(rng))
            c = rng.uniform(0, 2 * math.pi)
            assert loss(ang.shifted(c), t) == pytest.approx(loss(ang, t), abs=1e-12)
            own = model_expectations(ang)
            assert loss(ang.shifted(c), own) == pytest.approx(0, abs=1e-24)


class TestFit:
    def test_recovers_realisable_targets(self, rng):
        for _ in range(20):
            target = model_expectations(random_angles(rng))
            result = fit(target)
            assert result.residual < 1e-10
            assert result.angles.alpha_a == 0.0
            assert abs(result.model_s) <= 2 * math.sqrt(2) + 1e-9

    def test_reported_target_against_grid(self):
        result = fit(REPORTED)
        coarse = grid_losses(REPORTED, steps=20, pin_alpha_a=False)
        assert result.residual <= coarse.min()
        assert result.residual >= 0
        assert abs(result.model_s) <= 2 * math.sqrt(2) + 1e-9
        assert result.converged

    def test_all_positive_corner(self):
        result = fit(ExpectationSet(1, 1, 1, 1))
        assert result.residual < 1e-10
        a = result.angles
        assert math.cos(a.alpha_ap - a.alpha_a) == pytest.approx(1, abs=1e-9)
        assert math.cos(a.beta_b - a.beta_bp) == pytest.approx(1, abs=1e-9)
        assert math.cos(a.beta_b - (a.alpha_a + math.pi)) == pytest.approx(1, abs=1e-9)

    def test_deterministic(self):
        assert fit(REPORTED) == fit(REPORTED)

    def test_residual_zero_implies_match(self, rng):
        target = model_expectations(random_angles(rng))
        result = fit(target)
        assert result.model.values == pytest.approx(target.values, abs=1e-5)

    def test_to_dict(self):
        d = fit(REPORTED).to_dict()
        assert set(d) >= {"angles", "residual", "model_expectations", "model_s", "converged"}
        assert d["angles"]["alpha_a"] == 0.0
        for v in d["angles"].values():
            assert v == round(v, 12)
