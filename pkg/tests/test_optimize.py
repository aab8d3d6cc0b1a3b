import numpy as np
import pytest

from binarcop.optimize import NonconvergenceError, OptimizerSpec, minimize


class TestMinimize:
    def test_quadratic_1d(self):
        x, f, evals = minimize(lambda z: (z[0] - 2.0) ** 2, [(-10, 10)], [0.0])
        assert x[0] == pytest.approx(2.0, abs=1e-6)
        assert f == pytest.approx(0.0, abs=1e-10)
        assert evals > 0

    def test_quadratic_3d(self):
        target = np.array([1.0, -2.0, 0.5])
        x, f, _ = minimize(
            lambda z: float(np.sum((z - target) ** 2)),
            [(-5, 5)] * 3,
            [0.0, 0.0, 0.0],
        )
        np.testing.assert_allclose(x, target, atol=1e-5)

    def test_rosenbrock_like_bowl(self):
        def f(z):
            return (1.0 - z[0]) ** 2 + 100.0 * (z[1] - z[0] ** 2) ** 2

        x, fval, _ = minimize(f, [(-2, 2), (-1, 3)], [-1.2, 1.0])
        np.testing.assert_allclose(x, [1.0, 1.0], atol=1e-4)
        assert fval < 1e-8

    def test_minimum_on_boundary(self):
        # unconstrained minimum at 3 lies outside the box [0, 1]
        x, f, _ = minimize(lambda z: (z[0] - 3.0) ** 2, [(0.0, 1.0)], [0.5])
        assert x[0] == pytest.approx(1.0, abs=1e-6)
        assert f == pytest.approx(4.0, abs=1e-6)

    def test_never_evaluates_outside_bounds(self):
        lo, hi = np.array([-1.0, 0.0]), np.array([1.0, 2.0])
        seen = []

        def f(z):
            seen.append(z.copy())
            return float(np.sum((z - np.array([5.0, -5.0])) ** 2))

        minimize(f, list(zip(lo, hi)), [0.0, 1.0])
        pts = np.array(seen)
        assert (pts >= lo - 1e-12).all() and (pts <= hi + 1e-12).all()

    def test_rejects_infeasible_init(self):
        with pytest.raises(ValueError):
            minimize(lambda z: z[0] ** 2, [(0.0, 1.0)], [2.0])

    def test_rejects_dimension_mismatch(self):
        with pytest.raises(ValueError):
            minimize(lambda z: z[0] ** 2, [(0.0, 1.0)], [0.5, 0.5])

    def test_nonconvergence_carries_best_point(self):
        opt = OptimizerSpec(x_tol=0.0, f_tol=0.0, max_evals=25)
        with pytest.raises(NonconvergenceError) as exc_info:
            minimize(lambda z: (z[0] - 2.0) ** 2, [(-10, 10)], [0.0], opt)
        err = exc_info.value
        assert err.evals >= 25
        assert np.isfinite(err.f_best)
        assert err.f_best <= 4.0  # no worse than the starting point

    def test_respects_custom_tolerances(self):
        loose = OptimizerSpec(x_tol=1e-2, f_tol=1e-2, max_evals=10_000)
        _, _, evals_loose = minimize(lambda z: (z[0] - 2.0) ** 2, [(-10, 10)], [0.0], loose)
        tight = OptimizerSpec(x_tol=1e-10, f_tol=1e-12, max_evals=10_000)
        _, _, evals_tight = minimize(lambda z: (z[0] - 2.0) ** 2, [(-10, 10)], [0.0], tight)
        assert evals_loose < evals_tight

    def test_nonsmooth_objective(self):
        x, _, _ = minimize(lambda z: abs(z[0] - 0.7) + abs(z[1] + 0.3), [(-1, 1), (-1, 1)], [0.0, 0.0])
        np.testing.assert_allclose(x, [0.7, -0.3], atol=1e-5)
