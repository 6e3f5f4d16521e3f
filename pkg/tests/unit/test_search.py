import numpy as np
import pytest

from tripartite_hardy.services.hardy3 import evaluate_conditions
from tripartite_hardy.services.search import construction_value, maximize_success, q3_constant, unpack

Q3 = 0.0347513


def test_q3_constant():
    xi, q3 = q3_constant()

    assert xi ** 3 + 4 * xi ** 2 - 2 == pytest.approx(0.0, abs=1e-12)
    assert q3 == pytest.approx(Q3, abs=1e-6)


def test_unpack_projects_onto_unit_sphere():
    canon, z = unpack([0.3, -1.0, 2.0, 0.5, 0.5, 1.0, 0.2, -0.4])

    assert abs(canon.h) ** 2 + canon.u ** 2 + canon.v ** 2 + canon.s ** 2 + canon.t ** 2 == pytest.approx(1.0)
    assert np.angle(canon.h) == pytest.approx(0.3)
    assert min(canon.u, canon.v, canon.s, canon.t) >= 0
    assert z == 0.2 - 0.4j


def test_construction_value_is_bounded():
    canon, z = unpack([0.5, 0.6, 0.2, 0.3, 0.4, 0.5, 0.7, 0.1])

    p, root = construction_value(canon, z)

    assert root is not None
    assert 0 < p <= Q3 + 1e-6


def test_search_respects_the_bound():
    result = maximize_success(seed=3, restarts=3, iters=300)

    assert 0 < result.p_best <= Q3 + 1e-6
    assert result.report.passed
    assert result.report.p_pos == result.p_best
    assert evaluate_conditions(result.canon.to_state(), result.settings).max_zero < 1e-9
    assert 0 <= result.restart < 3


def test_search_is_deterministic():
    first = maximize_success(seed=11, restarts=2, iters=200)
    second = maximize_success(seed=11, restarts=2, iters=200)

    assert first.p_best == second.p_best
    assert first.evaluations == second.evaluations


@pytest.mark.slow
def test_search_exceeds_the_near_optimal_anchor():
    result = maximize_success(seed=7, restarts=200, iters=2000)

    assert 0.0335 <= result.p_best <= Q3 + 1e-6
