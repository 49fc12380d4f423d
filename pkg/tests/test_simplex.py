import random

import numpy as np
import pytest
from scipy.optimize import linprog

from zddcolor.simplex import BoundedSimplex, solve_covering_lp


def random_model(rng: random.Random, m: int, n: int):
    A = np.array([[1.0 if rng.random() < 0.4 else 0.0 for _ in range(n)] for _ in range(m)])
    for i in range(m):
        if not A[i].any():
            A[i, rng.randrange(n)] = 1.0
    b = np.array([float(rng.randint(1, 2)) for _ in range(m)])
    c = np.array([rng.uniform(0.5, 2.0) for _ in range(n)])
    upper = np.array([rng.choice([1.0, 2.0, np.inf]) for _ in range(n)])
    return A, b, c, upper


def reference(A, b, c, upper):
    return linprog(c, A_ub=-A, b_ub=-b, bounds=list(zip(np.zeros(len(c)), upper)), method="highs")


def test_matches_highs_and_certifies_optimality():
    rng = random.Random(1)
    checked = 0
    for _ in range(60):
        A, b, c, upper = random_model(rng, rng.randint(2, 8), rng.randint(2, 12))
        res = solve_covering_lp(A, b, c, upper=upper)
        ref = reference(A, b, c, upper)
        assert res.feasible == (ref.status == 0)
        if not res.feasible:
            continue
        checked += 1
        assert res.objective == pytest.approx(ref.fun, abs=1e-6)
        x, y = res.x, res.duals
        assert np.all(A @ x >= b - 1e-7)
        assert np.all(x >= -1e-9) and np.all(x <= upper + 1e-9)
        # reduced costs and complementary slackness
        d = c - y @ A
        assert np.allclose(d, res.reduced_costs, atol=1e-7)
        assert np.all(np.abs(y * (A @ x - b)) <= 1e-6)
        # below the upper bound d >= 0, above zero d <= 0
        assert np.all(np.where(x < upper - 1e-9, d, 0.0) >= -1e-6)
        assert np.all(np.where(x > 1e-9, d, 0.0) <= 1e-6)
        assert abs(res.dual_objective - res.objective) <= 1e-6
    assert checked > 30


def test_infeasible_detected():
    # x <= 1 cannot reach a requirement of 2
    res = solve_covering_lp(np.array([[1.0]]), np.array([2.0]), np.array([1.0]), upper=np.array([1.0]))
    assert not res.feasible
    assert res.artificial == pytest.approx(1.0)


def test_warm_start_after_appending_columns():
    rng = random.Random(2)
    A, b, c, upper = random_model(rng, 6, 10)
    lp = BoundedSimplex(b)
    for j in range(5):
        lp.add_column(A[:, j], c[j], 0.0, upper[j])
    lp.solve()
    for j in range(5, 10):
        lp.add_column(A[:, j], c[j], 0.0, upper[j])
    res = lp.solve()
    assert res.objective == pytest.approx(reference(A, b, c, upper).fun, abs=1e-6)


def test_bound_changes_between_solves():
    rng = random.Random(3)
    A, b, c, _ = random_model(rng, 5, 9)
    upper = np.ones(9)
    lp = BoundedSimplex(b)
    for j in range(9):
        lp.add_column(A[:, j], c[j], 0.0, 1.0)
    lp.solve()
    for k, (lo, up) in enumerate([(1.0, 1.0), (0.0, 0.0), (0.0, 1.0)]):
        lp.set_bounds(k, lo, up)
    res = lp.solve()
    lower = np.zeros(9)
    lower[0] = 1.0
    upper[1] = 0.0
    ref = linprog(c, A_ub=-A, b_ub=-b, bounds=list(zip(lower, upper)), method="highs")
    assert res.feasible == (ref.status == 0)
    if res.feasible:
        assert res.objective == pytest.approx(ref.fun, abs=1e-6)
        assert res.x[0] == 1.0 and res.x[1] == 0.0


def test_degenerate_covering_terminates():
    # identical columns and rows create heavy degeneracy
    A = np.ones((6, 12))
    res = solve_covering_lp(A, np.ones(6), np.ones(12), upper=np.ones(12))
    assert res.objective == pytest.approx(1.0)


def test_rejects_inverted_bounds():
    lp = BoundedSimplex(np.ones(1))
    with pytest.raises(ValueError):
        lp.add_column(np.ones(1), 1.0, 1.0, 0.0)
