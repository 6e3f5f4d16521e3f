from dataclasses import replace

import numpy as np
import pytest

from tripartite_hardy.integrations.state_files import dump_settings_text, parse_settings_text
from tripartite_hardy.services import pipeline
from tripartite_hardy.services.hardy3 import evaluate_conditions
from tripartite_hardy.services.hardy3_sym import evaluate_chenq_conditions
from tripartite_hardy.services.magic_basis import CanonicalForm, StateTag
from tripartite_hardy.services.ns_bilocal import check_bilocal
from tripartite_hardy.services.pipeline import NO_CONVERGENCE_FLAG, canonical_pipeline, run_hardy_test
from tripartite_hardy.services.random_streams import make_rng, random_complex, random_unitary
from tripartite_hardy.services.tensor_core import correlation_table, local_basis_change, make_state
from tripartite_hardy.utils.errors import DimensionMismatchError, NotFullyEntangledError


def test_gedanken_state_end_to_end(gedanken_state):
    outcome = run_hardy_test(gedanken_state)

    assert outcome.report.passed
    assert not outcome.certificate.feasible
    assert outcome.certificate.margin > 1e-7


@pytest.mark.parametrize("seed", range(5))
def test_random_qubit_states_end_to_end(seed, random_state):
    state = random_state(seed)

    outcome = run_hardy_test(state, seed=seed)

    assert outcome.canonical.state_class.tag is StateTag.ASYMMETRIC
    assert not outcome.symmetric_test
    assert outcome.report.passed
    assert not outcome.certificate.feasible


@pytest.mark.parametrize("theta", [0.3, 0.7, 1.1])
def test_ghz_like_states_take_the_symmetric_test(theta):
    state = make_state((2, 2, 2), [((0, 0, 0), np.cos(theta)), ((1, 1, 1), np.sin(theta))])

    outcome = run_hardy_test(state)

    assert outcome.symmetric_test
    assert str(outcome.canonical.state_class) == "SymmetricFailing/GHZlike"
    assert outcome.report.passed
    assert [str(word) for word in outcome.report.zero_words][-1] == "~baa"


@pytest.mark.parametrize("seed", range(3))
def test_random_qutrit_states_end_to_end(seed, random_state):
    state = random_state(seed, dims=(3, 3, 3))

    outcome = run_hardy_test(state, seed=seed)

    assert outcome.canonical.record is not None
    assert outcome.canonical.reduced_state.dims == (2, 2, 2)
    assert outcome.report.passed
    assert not outcome.certificate.feasible
    assert [pair.dim for pair in outcome.settings] == [3, 3, 3]


def test_canonical_pipeline_of_qubits_skips_reduction(gedanken_state):
    outcome = canonical_pipeline(gedanken_state)

    assert outcome.record is None
    assert outcome.reduced_state is None
    assert abs(outcome.closest_overlap) == pytest.approx(abs(outcome.canon.h), abs=1e-9)


def test_biseparable_states_are_rejected():
    state = make_state((2, 2, 2), [((0, 0, 0), 1), ((0, 1, 1), 1)])

    with pytest.raises(NotFullyEntangledError):
        run_hardy_test(state)


def test_two_party_states_are_rejected():
    with pytest.raises(DimensionMismatchError):
        canonical_pipeline(make_state((2, 2), [((0, 0), 1), ((1, 1), 1)]))


@pytest.mark.parametrize("seed", range(3))
def test_lifted_qutrit_settings_replay_on_the_input_state(seed, random_state):
    state = random_state(seed, dims=(3, 3, 3))
    outcome = run_hardy_test(state, seed=seed)

    settings = parse_settings_text(dump_settings_text(outcome.settings), state.dims)
    evaluate = evaluate_chenq_conditions if outcome.symmetric_test else evaluate_conditions
    report = evaluate(state, settings)

    assert all(pair.is_restricted for pair in settings)
    assert report.passed
    assert report.p_pos == pytest.approx(outcome.report.p_pos, rel=1e-9)
    assert not check_bilocal(correlation_table(state, settings)).feasible


def test_unconverged_product_search_is_flagged(monkeypatch, gedanken_state):
    search = pipeline.find_magic_basis

    def unconverged(state, **kwargs):
        magic_state, transform, ansatz = search(state, **kwargs)
        return magic_state, transform, replace(ansatz, converged=False)

    monkeypatch.setattr(pipeline, "find_magic_basis", unconverged)

    outcome = run_hardy_test(gedanken_state)

    assert not outcome.canonical.converged
    assert NO_CONVERGENCE_FLAG in outcome.report.flags
    assert outcome.report.passed


@pytest.mark.slow
def test_random_symmetric_states_pass_from_rotated_bases():
    for seed in range(100):
        rng = make_rng(seed, 200)
        h = complex(random_complex(rng, 1)[0])
        s, t = rng.uniform(0.1, 1.0, 2)
        unitaries = [random_unitary(rng, 2) for _ in range(3)]
        state = local_basis_change(CanonicalForm.from_coefficients(h, s, s, s, t).to_state(), unitaries)

        outcome = run_hardy_test(state, seed=seed)

        assert outcome.report.passed, seed
        assert not outcome.certificate.feasible, seed
