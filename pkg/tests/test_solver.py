import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilbert_tikhonov.exceptions import InvalidInputError
from hilbert_tikhonov.experiment import oracle_minimize
from hilbert_tikhonov.hilbert_scale import DiagonalHilbertScale
from hilbert_tikhonov.model import TestProblem, make_paper_problem
from hilbert_tikhonov.solver import (
    _cubic_real_roots,
    coordinate_minimize,
    minimize_tikhonov,
    residual_norm,
)

# root of 2(t^2 + 7t - 8)(2t + 7) + 0.02 t, 30-digit findroot; matches a refined grid search
COORD_N1_ALPHA_1EM2_F8 = 0.99987655337055750851148110426


def random_instance(problem, rng, radius=1.5):
    u = rng.standard_normal(problem.size)
    u *= rng.uniform(0, radius) / np.linalg.norm(u)
    return problem.forward(u) + 1e-3 * rng.standard_normal(problem.size)


class TestCubicRoots:
    @pytest.mark.parametrize("seed", range(5))
    def test_against_numpy_roots(self, seed):
        rng = np.random.default_rng(seed)
        coeffs = [np.full(200, 2.0), np.full(200, 21.0),
                  rng.uniform(-100, 100, 200) * 10.0 ** rng.integers(-2, 14, 200),
                  rng.uniform(-50, 50, 200)]
        roots = _cubic_real_roots(tuple(coeffs))
        for i in range(200):
            ref = np.roots([c[i] for c in coeffs])
            real = np.sort(ref[np.abs(ref.imag) <= 1e-9 * np.maximum(1, np.abs(ref))].real)
            got = roots[i][~np.isnan(roots[i])]
            assert got.size == real.size
            np.testing.assert_allclose(got, real, rtol=1e-8, atol=1e-12)

    def test_linear_case(self):
        roots = _cubic_real_roots((np.zeros(1), np.zeros(1), np.array([4.0]), np.array([-2.0])))
        assert roots[0, 0] == 0.5 and np.isnan(roots[0, 1:]).all()


class TestCoordinate:
    def test_zero_data(self, small_problem):
        assert coordinate_minimize(3, 0.0, 1e-3, small_problem) == 0.0

    def test_penalty_dominated(self, small_problem):
        assert abs(coordinate_minimize(1, 8.0, 1e6, small_problem)) < 1e-4

    def test_pinned_value(self, small_problem):
        t = coordinate_minimize(1, 8.0, 1e-2, small_problem)
        assert t == pytest.approx(COORD_N1_ALPHA_1EM2_F8, rel=1e-13)

    def test_index_range(self, small_problem):
        with pytest.raises(InvalidInputError):
            coordinate_minimize(0, 1.0, 1.0, small_problem)


class TestMinimize:
    def test_exact_fit_at_u_bar(self, small_problem):
        sol = minimize_tikhonov(small_problem, np.zeros(8), 0.3)
        np.testing.assert_array_equal(sol.u, np.zeros(8))
        assert sol.objective == 0.0

    def test_large_alpha_shrinks_to_u_bar(self, paper_problem):
        f = paper_problem.f_true
        sol = minimize_tikhonov(paper_problem, f, 1e12)
        initial = np.linalg.norm(f)
        assert np.linalg.norm(sol.u) <= initial / np.sqrt(1e12)
        assert sol.objective <= initial**2

    def test_matches_grid_oracle(self, small_problem):
        rng = np.random.default_rng(5)
        f = random_instance(small_problem, rng)
        sol = minimize_tikhonov(small_problem, f, 1e-3)
        ref = oracle_minimize(small_problem, f, 1e-3, zoom_passes=3)
        assert np.max(np.abs(sol.u - ref.u)) <= 1e-8
        assert sol.objective == pytest.approx(ref.objective, rel=1e-12)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.floats(-5, 1))
    def test_never_worse_than_oracle(self, seed, log_alpha):
        problem = make_paper_problem(16)[0]
        rng = np.random.default_rng(seed)
        f = random_instance(problem, rng)
        alpha = 10.0**log_alpha
        sol = minimize_tikhonov(problem, f, alpha)
        ref = oracle_minimize(problem, f, alpha, grid_points=4001)
        assert sol.objective <= ref.objective + 1e-10

    def test_residual_monotone_in_alpha(self, paper_problem):
        rng = np.random.default_rng(11)
        f = paper_problem.f_true + rng.uniform(-1e-3, 1e-3, paper_problem.size) / np.sqrt(paper_problem.size)
        residuals = [minimize_tikhonov(paper_problem, f, a).residual for a in np.logspace(-14, 2, 33)]
        assert np.all(np.diff(residuals) >= -1e-12)

    @pytest.mark.parametrize("alpha", [1e-12, 1e-6, 1e-2, 1e2])
    def test_penalty_and_feasibility_bounds(self, paper_problem, alpha):
        rng = np.random.default_rng(int(-np.log10(alpha)) + 20)
        f = paper_problem.f_true + rng.uniform(-1e-4, 1e-4, paper_problem.size)
        sol = minimize_tikhonov(paper_problem, f, alpha)
        initial = np.linalg.norm(paper_problem.forward(paper_problem.u_bar) - f)
        assert np.sqrt(alpha) * sol.penalty <= np.sqrt(sol.objective) * (1 + 1e-14)
        assert np.sqrt(sol.objective) <= initial
        assert np.linalg.norm(sol.u) <= paper_problem.domain_radius + 1e-12

    def test_deterministic(self, paper_problem):
        f = paper_problem.f_true + 1e-5
        a = minimize_tikhonov(paper_problem, f, 1e-7)
        b = minimize_tikhonov(paper_problem, f, 1e-7)
        assert a.u.tobytes() == b.u.tobytes()

    @pytest.mark.parametrize("alpha", [0.0, -1.0, np.inf, np.nan])
    def test_bad_alpha(self, small_problem, alpha):
        with pytest.raises(InvalidInputError):
            minimize_tikhonov(small_problem, np.zeros(8), alpha)

    def test_bad_data(self, small_problem):
        with pytest.raises(InvalidInputError):
            minimize_tikhonov(small_problem, np.full(8, np.inf), 1.0)


class TestBallConstraint:
    def test_active_constraint_against_disk_search(self):
        # N = 2, data generated far outside the ball
        scale = DiagonalHilbertScale.natural(2)
        problem = TestProblem(scale, 7.0, True, 3.0, np.array([0.5, 0.2]), np.zeros(2))
        f = problem.forward(np.array([4.0, 2.0]))
        alpha = 1e-4
        sol = minimize_tikhonov(problem, f, alpha)
        assert sol.multiplier > 0
        assert np.linalg.norm(sol.u) == pytest.approx(3.0, abs=1e-10)
        assert np.linalg.norm(sol.u) <= 3.0 + 1e-12

        def objective(u1, u2):
            misfit = ((7 * u1 + u1**2) - f[0]) ** 2 + ((7 * u2 + u2**2) / 2 - f[1]) ** 2
            return misfit + alpha * (u1**2 + 4 * u2**2)

        r = 3.0 * np.sqrt(np.linspace(0, 1, 601))[:, None]
        ang = np.linspace(-np.pi, np.pi, 4001)[None, :]
        values = objective(r * np.cos(ang), r * np.sin(ang))
        assert sol.objective <= values.min() + 1e-9

    def test_interior_solution_has_zero_multiplier(self, small_problem):
        sol = minimize_tikhonov(small_problem, small_problem.f_true, 1e-4)
        assert sol.multiplier == 0.0


def test_linear_operator_closed_form():
    scale = DiagonalHilbertScale.natural(6)
    problem = TestProblem(scale, 2.0, False, 3.0, np.full(6, 0.1), np.zeros(6))
    f = np.linspace(-0.3, 0.4, 6)
    n = np.arange(1, 7.0)
    alpha = 0.01
    expected = 2.0 * n * f / (4.0 + alpha * n**4)
    np.testing.assert_allclose(minimize_tikhonov(problem, f, alpha).u, expected, rtol=1e-14)


def test_residual_norm(paper_problem):
    assert residual_norm(paper_problem, paper_problem.u_true, paper_problem.f_true) == 0.0
    f = paper_problem.f_true + 1e-3
    assert residual_norm(paper_problem, paper_problem.u_bar, f) == pytest.approx(np.linalg.norm(f), rel=1e-15)
