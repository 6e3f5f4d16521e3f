import numpy as np
import pytest
from scipy.optimize import linprog

from tripartite_hardy.services.lp_simplex import lp_feasibility
from tripartite_hardy.utils.errors import DimensionMismatchError, LPNumericalFailureError


def test_simple_feasible_system():
    result = lp_feasibility([[1, 1]], [1])

    assert result.feasible
    assert result.margin <= 1e-12
    assert result.x.sum() == pytest.approx(1.0)
    assert np.all(result.x >= 0)


def test_negative_right_hand_side_is_infeasible():
    result = lp_feasibility([[1, 1]], [-1])

    assert not result.feasible
    assert result.margin == pytest.approx(1.0)
    assert result.x is None


@pytest.mark.parametrize("seed", range(10))
def test_random_feasible_systems(seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((6, 15))
    b = A @ rng.uniform(0, 1, 15)

    result = lp_feasibility(A, b)

    assert result.feasible
    assert np.all(result.x >= 0)
    assert np.allclose(A @ result.x, b, atol=1e-8)


def test_redundant_rows_are_handled():
    A = [[1, 1, 0], [2, 2, 0], [0, 1, 1]]

    result = lp_feasibility(A, [1, 2, 1], cost=[1, 0, 1])

    assert result.feasible
    assert result.objective == pytest.approx(0.0, abs=1e-12)
    assert np.allclose(result.x, [0, 1, 0])


@pytest.mark.parametrize("seed", range(5))
def test_phase_two_agrees_with_scipy(seed):
    rng = np.random.default_rng(100 + seed)
    A = rng.standard_normal((4, 10))
    b = A @ rng.uniform(0, 1, 10)
    cost = rng.uniform(0.1, 1.0, 10)

    result = lp_feasibility(A, b, cost=cost)
    reference = linprog(cost, A_eq=A, b_eq=b, bounds=(0, None), method="highs")

    assert reference.status == 0
    assert result.objective == pytest.approx(reference.fun, rel=1e-7, abs=1e-9)


def test_pivot_limit():
    with pytest.raises(LPNumericalFailureError):
        lp_feasibility([[1, 1]], [1], max_pivots=0)


def test_unbounded_phase_two():
    with pytest.raises(LPNumericalFailureError):
        lp_feasibility([[1, -1]], [1], cost=[0, -1])


def test_shape_checks():
    with pytest.raises(DimensionMismatchError):
        lp_feasibility([[1, 1]], [1, 2])
    with pytest.raises(DimensionMismatchError):
        lp_feasibility([[1, np.nan]], [1])
    with pytest.raises(DimensionMismatchError):
        lp_feasibility([[1, 1]], [1], cost=[1])
