import numpy as np
import pytest

from tripartite_hardy.services.hardy3 import HardySettings
from tripartite_hardy.services.ns_bilocal import (
    BoxKind,
    Verdict,
    check_bilocal,
    enumerate_vertices,
    local_deterministic_boxes,
    noise_threshold,
    pr_boxes,
    uniform_table,
    vertex_matrix,
)
from tripartite_hardy.services.tensor_core import CorrelationTable, correlation_table, make_state
from tripartite_hardy.utils.errors import DimensionMismatchError, InternalConsistencyError


def test_vertex_counts():
    vertices = enumerate_vertices()

    assert len(local_deterministic_boxes()) == 16
    assert len(pr_boxes()) == 8
    assert len(vertices) == 288
    assert vertex_matrix().shape == (64, 288)
    assert [vertex.partition for vertex in vertices[::96]] == [0, 1, 2]
    assert vertices[16].pair.kind is BoxKind.PR_BOX


def test_vertices_are_valid_non_signaling_tables():
    for vertex in enumerate_vertices():
        assert vertex.table.normalization_error() < 1e-15
        assert vertex.table.is_non_signaling(1e-15)


def test_pr_box_correlations():
    box = pr_boxes()[0].table
    # alpha = beta = gamma = 0: outcomes agree unless both settings are b
    assert box[0, 0, 0, 0] == box[0, 0, 1, 1] == 0.5
    assert box[1, 1, 0, 1] == box[1, 1, 1, 0] == 0.5


@pytest.mark.parametrize("seed", range(10))
def test_random_vertex_mixtures_are_bilocal(seed):
    rng = np.random.default_rng(seed)
    chosen = rng.choice(288, size=6, replace=False)
    weights = rng.dirichlet(np.ones(6))
    p = sum(w * enumerate_vertices()[i].table.p for w, i in zip(weights, chosen))

    certificate = check_bilocal(CorrelationTable(n=3, p=p))

    assert certificate.verdict is Verdict.FEASIBLE
    assert certificate.reconstruction_error < 1e-8
    assert certificate.weights.sum() == pytest.approx(1.0)


@pytest.mark.slow
def test_many_random_vertex_mixtures_are_bilocal():
    vertices = enumerate_vertices()
    for seed in range(100, 150):
        rng = np.random.default_rng(seed)
        size = int(rng.integers(2, 12))
        chosen = rng.choice(288, size=size, replace=False)
        weights = rng.dirichlet(np.ones(size))
        p = sum(w * vertices[i].table.p for w, i in zip(weights, chosen))

        certificate = check_bilocal(CorrelationTable(n=3, p=p))

        assert certificate.verdict is Verdict.FEASIBLE, seed
        assert certificate.reconstruction_error < 1e-8, seed


def test_gedanken_table_is_not_bilocal(gedanken_state, gedanken_settings):
    certificate = check_bilocal(correlation_table(gedanken_state, gedanken_settings))

    assert certificate.verdict is Verdict.INFEASIBLE
    assert certificate.margin > 1e-7
    assert certificate.weights is None


def test_near_optimal_table_is_not_bilocal(near_optimal_state, z_x_settings):
    certificate = check_bilocal(correlation_table(near_optimal_state, z_x_settings))

    assert not certificate.feasible
    assert certificate.margin > 1e-7


def test_product_with_chsh_pair_is_bilocal():
    state = make_state((2, 2, 2), [((0, 0, 0), 1), ((0, 1, 1), 1)])
    angle = np.pi / 8
    settings = HardySettings.from_rays(
        a_rays=[[1, 0], [1, 0], [np.cos(angle), np.sin(angle)]],
        b_rays=[[1, 1], [1, 1], [np.cos(-angle), np.sin(-angle)]],
    )

    certificate = check_bilocal(correlation_table(state, settings))

    assert certificate.feasible
    assert certificate.reconstruction_error < 1e-8


def test_noise_threshold(gedanken_state, gedanken_settings):
    table = correlation_table(gedanken_state, gedanken_settings)

    threshold = noise_threshold(table, iterations=12)

    assert 0 < threshold < 1
    assert check_bilocal(table.mixed_with(uniform_table(), threshold)).feasible
    assert noise_threshold(uniform_table()) == 0.0


def test_two_party_tables_are_rejected():
    with pytest.raises(DimensionMismatchError):
        check_bilocal(CorrelationTable(n=2, p=np.full((2, 2, 2, 2), 0.25)))


def test_unnormalized_tables_are_rejected():
    with pytest.raises(InternalConsistencyError):
        check_bilocal(CorrelationTable(n=3, p=np.full((2,) * 6, 0.2)))
