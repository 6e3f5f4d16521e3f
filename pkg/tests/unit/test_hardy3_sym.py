import numpy as np
import pytest

from tripartite_hardy.services.hardy3_sym import (
    SymmetricCanon,
    construct_symmetric_test,
    default_phase,
    evaluate_chenq_conditions,
    modulus_grid,
    r_polynomial,
    r_value,
    symmetric_rays,
    symmetric_settings,
)
from tripartite_hardy.services.magic_basis import CanonicalForm
from tripartite_hardy.services.random_streams import make_rng, random_complex
from tripartite_hardy.services.tensor_core import contract
from tripartite_hardy.utils.errors import ConstructionFailedError, NotEntangledError


def random_symmetric(seed):
    rng = make_rng(seed, 200)
    h = complex(random_complex(rng, 1)[0])
    s, t = rng.uniform(0.1, 1.0, 2)
    return SymmetricCanon.from_coefficients(h, s, t), rng


@pytest.mark.parametrize("seed", range(20))
def test_r_polynomial_matches_direct_evaluation(seed):
    canon, rng = random_symmetric(seed)
    x = complex(random_complex(rng, 1)[0])

    assert r_polynomial(canon, x) == pytest.approx(r_value(canon, x), abs=1e-12)


@pytest.mark.parametrize("seed", range(20))
def test_success_amplitude_factorizes(seed):
    canon, rng = random_symmetric(seed)
    x = complex(random_complex(rng, 1)[0])
    rays = symmetric_rays(canon, x)

    amplitude = contract(canon.amplitudes(), [rays["a1"], rays["a2"], rays["a3"]])

    assert abs(amplitude) == pytest.approx(abs(r_value(canon, x) * np.linalg.det(canon.d_matrix(x))), rel=1e-10)


@pytest.mark.parametrize("seed", range(20))
def test_zero_conditions_vanish_for_any_x(seed):
    canon, rng = random_symmetric(seed)
    x = complex(random_complex(rng, 1)[0])

    report = evaluate_chenq_conditions(canon.to_state(), symmetric_settings(canon, x))

    assert report.max_zero < 1e-10


def test_symmetric_settings_are_invariant_under_swapping_the_first_two_parties():
    canon, _ = random_symmetric(4)
    settings = symmetric_settings(canon, 0.7 + 0.2j)

    direct = evaluate_chenq_conditions(canon.to_state(), settings)
    swapped = evaluate_chenq_conditions(canon.to_state(), settings.swapped(0, 1))

    assert swapped.p_pos == pytest.approx(direct.p_pos, abs=1e-14)
    assert swapped.zeros == pytest.approx(direct.zeros, abs=1e-14)


def test_ghz_passes_symmetric_test():
    canon = SymmetricCanon.from_coefficients(1 / np.sqrt(2), 0.0, 1 / np.sqrt(2))

    settings, report = construct_symmetric_test(canon)

    assert report.passed
    assert report.p_pos > 1e-3
    assert settings.provenance["source"] == "symmetric"


@pytest.mark.parametrize("h, s, t", [(0.5, 0.5, 0.5), (0.5j, 0.5, 0.0), (0.7, 0.3, 0.2)])
def test_symmetric_test_passes_on_symmetric_families(h, s, t):
    _, report = construct_symmetric_test(SymmetricCanon.from_coefficients(h, s, t))

    assert report.passed


def test_product_like_symmetric_form_is_not_entangled():
    with pytest.raises(NotEntangledError):
        construct_symmetric_test(SymmetricCanon.from_coefficients(1.0, 0.0, 0.0))


def test_asymmetric_form_is_rejected():
    with pytest.raises(ConstructionFailedError):
        SymmetricCanon.from_canonical(CanonicalForm.from_coefficients(0.6, 0.2, 0.3, 0.4, 0.5))


def test_modulus_grid_is_seeded_and_bounded():
    grid = modulus_grid(5)

    assert grid.shape == (32,)
    assert np.all((grid >= 0.05) & (grid <= 20.0))
    assert np.array_equal(grid, modulus_grid(5))


def test_default_phase_avoids_the_phase_of_h():
    h = np.exp(0.9j)
    twice = 2 * default_phase(h)

    assert abs(np.exp(1j * twice) - h) > 1
    assert abs(np.exp(1j * twice) + h) > 1


@pytest.mark.parametrize("theta", np.linspace(0.1, 1.4, 20))
def test_ghz_like_states_pass_symmetric_test(theta):
    _, report = construct_symmetric_test(SymmetricCanon.from_coefficients(np.cos(theta), 0.0, np.sin(theta)))

    assert report.passed


@pytest.mark.parametrize("seed", range(20))
def test_random_symmetric_states_pass_symmetric_test(seed):
    canon, _ = random_symmetric(seed)

    _, report = construct_symmetric_test(canon, seed=seed)

    assert report.passed
    assert report.max_zero < 1e-9
