"""
Multistart downhill-simplex search for the largest three-qubit Hardy success
probability reachable by the canonical construction, and the analytic bound q3.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect, minimize

from tripartite_hardy.services.hardy3 import (
    HardySettings,
    build_matrices,
    evaluate_conditions,
    raw_rays,
    settings_from_xyz,
    solve_xy,
)
from tripartite_hardy.services.hardy_n import ConditionReport, hardy_set
from tripartite_hardy.services.magic_basis import CanonicalForm
from tripartite_hardy.services.random_streams import STREAM_SEARCH_RESTART, make_rng
from tripartite_hardy.services.tensor_core import MeasurementPair
from tripartite_hardy.utils.constants import DET_C_MIN
from tripartite_hardy.utils.errors import ConstructionFailedError, DegenerateQuadraticError, ZeroRayError

ZERO_CONDITION_MAX = 1e-9


@dataclass(frozen=True, eq=False)
class SearchResult:
    canon: CanonicalForm
    settings: HardySettings
    report: ConditionReport
    p_best: float
    restart: int
    evaluations: int


def q3_constant() -> tuple:
    """xi is the positive root of x^3 + 4x^2 - 2; q3 = (1 - xi^2) xi^2 / (2 + xi)^2."""
    xi = bisect(lambda x: x ** 3 + 4 * x ** 2 - 2, 0.0, 1.0, xtol=1e-14)
    return xi, (1 - xi ** 2) * xi ** 2 / (2 + xi) ** 2


def unpack(point) -> tuple:
    """8 reals -> (canonical form, z). The coefficient moduli are projected onto the unit sphere."""
    phase, *moduli, re_z, im_z = (float(value) for value in point)
    h_abs, u, v, s, t = np.abs(moduli)
    if h_abs + u + v + s + t == 0:
        h_abs = 1.0
    canon = CanonicalForm.from_coefficients(h_abs * np.exp(1j * phase), u, v, s, t)
    return canon, complex(re_z, im_z)


def _words():
    hardy = hardy_set(3)
    return (hardy.positivity,) + hardy.zeros


def _word_probabilities(amps_conj: np.ndarray, rays: dict) -> np.ndarray:
    pairs = [MeasurementPair.from_rays(k, rays[f"a{k + 1}"], rays[f"b{k + 1}"]) for k in range(3)]
    probabilities = []
    for word in _words():
        vectors = [
            pair.outcome_ray(setting, outcome)
            for pair, setting, outcome in zip(pairs, word.choice, word.outcome)
        ]
        probabilities.append(abs(np.einsum("abc,a,b,c->", amps_conj, *vectors)) ** 2)
    return np.array(probabilities)


def construction_value(canon: CanonicalForm, z) -> tuple:
    """
    Best P(aaa) over the roots of the settings quadratic at z, with the root.
    Points whose zero conditions exceed 1e-9 score 0.
    """
    if abs(np.linalg.det(build_matrices(canon, z, 1, 0).C)) <= DET_C_MIN:
        return 0.0, None
    try:
        roots = solve_xy(canon, z)
    except DegenerateQuadraticError:
        return 0.0, None

    amps_conj = np.conj(canon.amplitudes())
    best = (0.0, None)
    for x, y in roots:
        try:
            rays = raw_rays(canon, z, x, y)
        except ZeroRayError:
            continue
        probabilities = _word_probabilities(amps_conj, rays)
        if np.max(probabilities[1:]) > ZERO_CONDITION_MAX:
            continue
        if probabilities[0] > best[0]:
            best = (float(probabilities[0]), (x, y))
    return best


def _objective(point) -> float:
    canon, z = unpack(point)
    return -construction_value(canon, z)[0]


def _start(rng: np.random.Generator) -> np.ndarray:
    return np.concatenate([[rng.uniform(0, 2 * np.pi)], np.abs(rng.standard_normal(5)), rng.standard_normal(2)])


def maximize_success(seed: int = 0, restarts: int = 200, iters: int = 2000) -> SearchResult:
    """
    Nelder-Mead (coefficients 1, 2, 0.5, 0.5) from ``restarts`` seeded starts.
    The best restart wins; ties go to the lower restart index.
    """
    best_value, best_point, best_restart = -1.0, None, -1
    evaluations = 0

    for restart in range(restarts):
        rng = make_rng(seed, STREAM_SEARCH_RESTART, restart)
        result = minimize(
            _objective,
            _start(rng),
            method="Nelder-Mead",
            options={"maxiter": iters, "maxfev": 2 * iters, "xatol": 1e-10, "fatol": 1e-15, "adaptive": False},
        )
        evaluations += result.nfev
        value = -float(result.fun)
        if value > best_value:
            best_value, best_point, best_restart = value, result.x, restart
        logging.debug(f"Restart {restart}: P(aaa)={value:.8g}")

    canon, z = unpack(best_point)
    p_best, root = construction_value(canon, z)
    if root is None:
        raise ConstructionFailedError(verboseMessage=f"no admissible point in {restarts} restarts")

    settings = settings_from_xyz(canon, z, *root)
    report = evaluate_conditions(canon.to_state(), settings)
    logging.info(f"Best P(aaa)={p_best:.10g} at restart {best_restart} after {evaluations} evaluations")
    return SearchResult(
        canon=canon,
        settings=settings,
        report=report,
        p_best=float(report.p_pos),
        restart=best_restart,
        evaluations=evaluations,
    )
