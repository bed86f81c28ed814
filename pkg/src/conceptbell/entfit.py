"""Least-squares fit of singlet-state measurement angles to four correlations.

For a maximally entangled pair measured along directions alpha (left) and
beta (right) in a plane, the full correlation is E = -cos(alpha - beta).
Given observed correlations we look for the four angles whose model
correlations are closest in the squared-error sense. A uniform shift of all
angles leaves every correlation unchanged, so alpha_a is pinned to 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chsh import ExpectationSet, chsh_value

TWO_PI = 2 * math.pi
GRID_STEPS = 64
MAX_ITER = 10_000
MIN_STEP = 1e-10
GRAD_TOL = 1e-8
STARTS = 8
# further starts cannot matter once a descent gets this low
NEGLIGIBLE_LOSS = 1e-20

# (left angle index, right angle index) for e_ab, e_abp, e_apb, e_apbp,
# indexing into (alpha_a, alpha_ap, beta_b, beta_bp)
_PAIRS = ((0, 2), (0, 3), (1, 2), (1, 3))


@dataclass(frozen=True)
class AngleSet:
    alpha_a: float
    alpha_ap: float
    beta_b: float
    beta_bp: float

    def __post_init__(self):
        for name in ("alpha_a", "alpha_ap", "beta_b", "beta_bp"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, value % TWO_PI)

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha_a, self.alpha_ap, self.beta_b, self.beta_bp])

    @classmethod
    def from_array(cls, x) -> "AngleSet":
        return cls(*(float(v) for v in x))

    def shifted(self, c: float) -> "AngleSet":
        return AngleSet.from_array(self.as_array() + c)


@dataclass(frozen=True)
class FitResult:
    angles: AngleSet
    residual: float
    evaluations: int
    converged: bool
    iterations: int = 0
    gradient_norm: float = float("nan")

    @property
    def model(self) -> ExpectationSet:
        return model_expectations(self.angles)

    @property
    def model_s(self) -> float:
        return float(chsh_value(self.model))

    def to_dict(self) -> dict:
        return {
            "angles": {
                name: round(getattr(self.angles, name), 12)
                for name in ("alpha_a", "alpha_ap", "beta_b", "beta_bp")
            },
            "residual": self.residual,
            "evaluations": self.evaluations,
            "iterations": self.iterations,
            "converged": self.converged,
            "model_expectations": dict(
                zip(("e_ab", "e_abp", "e_apb", "e_apbp"), self.model.as_floats())
            ),
            "model_s": self.model_s,
        }


def _model(x: np.ndarray) -> np.ndarray:
    return np.array([-math.cos(x[i] - x[j]) for i, j in _PAIRS])


def model_expectations(ang: AngleSet) -> ExpectationSet:
    e = np.clip(_model(ang.as_array()), -1.0, 1.0)
    return ExpectationSet(*(float(v) for v in e))


def _target_array(target: ExpectationSet) -> np.ndarray:
    return np.array(target.as_floats())


def _loss_and_grad(x, t) -> tuple[float, np.ndarray]:
    f, g = _loss_grad_py(tuple(float(v) for v in x), tuple(float(v) for v in t))
    return f, np.array(g)


def _loss_grad_py(x: tuple, t: tuple) -> tuple[float, list[float]]:
    # plain floats: this sits in the descent's inner loop
    f = 0.0
    g = [0.0, 0.0, 0.0, 0.0]
    for k, (i, j) in enumerate(_PAIRS):
        d = x[i] - x[j]
        r = -math.cos(d) - t[k]
        f += r * r
        # d/d(alpha) of -cos(alpha - beta) is sin(alpha - beta)
        dg = 2.0 * r * math.sin(d)
        g[i] += dg
        g[j] -= dg
    return f, g


def loss(ang: AngleSet, target: ExpectationSet) -> float:
    return _loss_and_grad(ang.as_array(), _target_array(target))[0]


def loss_gradient(ang: AngleSet, target: ExpectationSet) -> np.ndarray:
    """Gradient of :func:`loss` w.r.t. (alpha_a, alpha_ap, beta_b, beta_bp)."""
    return _loss_and_grad(ang.as_array(), _target_array(target))[1]


def grid_losses(target: ExpectationSet, steps: int = GRID_STEPS, pin_alpha_a: bool = True):
    """Loss on a regular angle grid.

    With ``pin_alpha_a`` the grid spans (alpha_ap, beta_b, beta_bp) at
    alpha_a = 0, giving an array of shape (steps,)*3; otherwise all four
    angles vary, shape (steps,)*4.
    """
    t = _target_array(target)
    g = np.arange(steps) * (TWO_PI / steps)
    if pin_alpha_a:
        a, ap, b, bp = np.zeros(1), g, g, g
    else:
        a, ap, b, bp = g, g, g, g
    A, AP, B, BP = np.meshgrid(a, ap, b, bp, indexing="ij")
    res = (
        (-np.cos(A - B) - t[0]) ** 2
        + (-np.cos(A - BP) - t[1]) ** 2
        + (-np.cos(AP - B) - t[2]) ** 2
        + (-np.cos(AP - BP) - t[3]) ** 2
    )
    return res[0] if pin_alpha_a else res


def _grid_minima(grid: np.ndarray, count: int) -> list[tuple[int, ...]]:
    """Indices of the ``count`` lowest local minima of a periodic grid."""
    is_min = np.ones(grid.shape, dtype=bool)
    for axis in range(grid.ndim):
        for shift in (1, -1):
            is_min &= grid <= np.roll(grid, shift, axis=axis)
    flat = np.flatnonzero(is_min)
    order = flat[np.argsort(grid.ravel()[flat], kind="stable")][:count]
    return [tuple(int(i) for i in np.unravel_index(k, grid.shape)) for k in order]


def _descend(x: list[float], t: tuple, max_iter: int):
    """Gradient descent with Armijo backtracking on the three free angles."""
    f, g = _loss_grad_py(tuple(x), t)
    evaluations = 1
    g[0] = 0.0
    step = 1.0
    it = 0
    for it in range(1, max_iter + 1):
        gg = g[1] * g[1] + g[2] * g[2] + g[3] * g[3]
        if gg == 0.0 or f == 0.0:
            break
        gnorm = math.sqrt(gg)
        # the trial step grows again after every accepted move
        step = min(step * 2.0, 1e3)
        while True:
            x_new = (x[0], x[1] - step * g[1], x[2] - step * g[2], x[3] - step * g[3])
            f_new, g_new = _loss_grad_py(x_new, t)
            evaluations += 1
            if f_new <= f - 1e-4 * step * gg or step * gnorm < MIN_STEP:
                break
            step *= 0.5
        moved = step * gnorm
        if f_new < f:
            x, f, g = x_new, f_new, g_new
            g[0] = 0.0
        if moved < MIN_STEP:
            break
    return x, f, g, it, evaluations


def fit(
    target: ExpectationSet,
    steps: int = GRID_STEPS,
    max_iter: int = MAX_ITER,
    starts: int = STARTS,
) -> FitResult:
    """Grid search over the three free angles, then backtracking descent.

    The descent runs from each of the ``starts`` lowest local minima of the
    grid and the best end point wins. Deterministic: no random restarts.
    The best point found is returned even if no descent met the gradient
    tolerance.
    """
    t = target.as_floats()
    grid = grid_losses(target, steps)
    evaluations = grid.size
    h = TWO_PI / steps
    best = None
    total_iter = 0
    for idx in _grid_minima(grid, starts):
        x0 = (0.0, idx[0] * h, idx[1] * h, idx[2] * h)
        x, f, g, it, n = _descend(x0, t, max_iter)
        evaluations += n
        total_iter += it
        if best is None or f < best[1]:
            best = (x, f, g)
        if f < NEGLIGIBLE_LOSS:
            break

    x, f, g = best
    gnorm = math.sqrt(g[1] ** 2 + g[2] ** 2 + g[3] ** 2)
    return FitResult(
        angles=AngleSet.from_array(x),
        residual=max(f, 0.0),
        evaluations=evaluations,
        converged=gnorm < GRAD_TOL,
        iterations=total_iter,
        gradient_norm=gnorm,
    )


def random_angles(rng) -> AngleSet:
    return AngleSet.from_array(rng.uniform(0.0, TWO_PI, size=4))


TSIRELSON_ANGLES = AngleSet(0.0, math.pi / 2, -math.pi / 4, -3 * math.pi / 4)
