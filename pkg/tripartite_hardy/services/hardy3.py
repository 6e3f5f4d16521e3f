"""
Three-qubit Hardy test for asymmetric canonical states.

With C_tau[nu, mu] = conj(c[mu, nu, tau]) and D_tau[mu, nu] = conj(c[tau, mu, nu])
the settings

    a1 = (x, y)           b1 = C^+ C a1
    a2 = J C C^+ C a1     b2 = J C a1
    a3 = J D^T C* a1*     b3 = (1, z)

with C = C0 + z C1 and D = x D0 + y D1 make four zero conditions vanish for
every (z, x, y). The remaining one fixes (x, y) through a homogeneous quadratic.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from tripartite_hardy.services.hardy_n import ConditionReport, evaluate_hardy_n
from tripartite_hardy.services.magic_basis import CanonicalForm
from tripartite_hardy.services.random_streams import (
    STREAM_DEGENERATE_XY,
    STREAM_Z_CANDIDATES,
    make_rng,
    random_complex,
    random_unit_vector,
)
from tripartite_hardy.services.tensor_core import MeasurementPair, PureState, contract
from tripartite_hardy.utils.constants import DET_C_MIN, QUADRATIC_ZERO, ZERO_RAY_NORM
from tripartite_hardy.utils.errors import (
    ConstructionFailedError,
    DegenerateQuadraticError,
    DimensionMismatchError,
    ZeroRayError,
)

J = np.array([[0, 1], [-1, 0]], dtype=complex)

RAY_NAMES = ("a1", "b1", "a2", "b2", "a3", "b3")
DEGENERATE_SAMPLES = 8
ROOT_DUPLICATE = 1 - 1e-12


@dataclass(frozen=True, eq=False)
class CMatrices:
    C: np.ndarray
    Ctilde: np.ndarray
    D: np.ndarray
    z: complex
    x: complex
    y: complex


@dataclass(frozen=True, eq=False)
class HardySettings:
    """
    One MeasurementPair per party, plus where the rays came from
    (``{"source": "construction", "z": .., "x": .., "y": ..}`` or
    ``{"source": "external"}``).
    """
    pairs: tuple
    provenance: dict = field(default_factory=lambda: {"source": "external"})

    @classmethod
    def from_rays(cls, a_rays, b_rays, provenance=None, a1_rays=None, b1_rays=None) -> "HardySettings":
        """Outcome-0 rays per party; ``a1_rays``/``b1_rays`` optionally fix the outcome-1 rays."""
        n = len(a_rays)
        a1_rays = a1_rays or [None] * n
        b1_rays = b1_rays or [None] * n
        pairs = tuple(
            MeasurementPair.from_rays(k, *rays) for k, rays in enumerate(zip(a_rays, b_rays, a1_rays, b1_rays))
        )
        return cls(pairs=pairs, provenance=provenance or {"source": "external"})

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __getitem__(self, index):
        return self.pairs[index]

    def swapped(self, i: int, j: int) -> "HardySettings":
        """Exchange the settings of two parties."""
        pairs = list(self.pairs)
        pairs[i], pairs[j] = pairs[j], pairs[i]
        return HardySettings(
            pairs=tuple(pair.relabeled(k) for k, pair in enumerate(pairs)),
            provenance=dict(self.provenance),
        )


def operator_components(amps: np.ndarray) -> tuple:
    """(C0, C1, D0, D1) of a three-qubit amplitude tensor."""
    conj = np.conj(np.asarray(amps, dtype=complex))
    return conj[:, :, 0].T, conj[:, :, 1].T, conj[0], conj[1]


def build_matrices(canon: CanonicalForm, z, x, y) -> CMatrices:
    C0, C1, D0, D1 = operator_components(canon.amplitudes())
    z = complex(z)
    return CMatrices(
        C=C0 + z * C1,
        Ctilde=np.conj(z) * C0 - C1,
        D=complex(x) * D0 + complex(y) * D1,
        z=z,
        x=complex(x),
        y=complex(y),
    )


def _trimmed_roots(coefficients) -> np.ndarray:
    coefficients = list(coefficients)
    while coefficients and abs(coefficients[0]) < QUADRATIC_ZERO:
        coefficients.pop(0)
    if len(coefficients) < 2:
        return np.array([], dtype=complex)
    return np.roots(coefficients)


def singular_z_values(canon: CanonicalForm) -> list:
    """Values of z where det C = h s + h t z - u v z^2 vanishes."""
    h, u, v, s, t = canon.coefficients
    return [complex(root) for root in _trimmed_roots([-u * v, h * t, h * s])]


def quadratic_form(canon: CanonicalForm, z) -> np.ndarray:
    """F = C^T C* C^T J Ctilde; the last zero condition reads a1^T F a1 = 0."""
    m = build_matrices(canon, z, 1, 0)
    return m.C.T @ np.conj(m.C) @ m.C.T @ J @ m.Ctilde


def solve_xy(canon: CanonicalForm, z) -> list:
    """Normalized roots (x, y) of x^2 F00 + xy (F01 + F10) + y^2 F11 = 0."""
    F = quadratic_form(canon, z)
    coefficients = np.array([F[0, 0], F[0, 1] + F[1, 0], F[1, 1]])
    scale = np.max(np.abs(coefficients))
    if scale < QUADRATIC_ZERO:
        raise DegenerateQuadraticError(verboseMessage=f"z={complex(z)!r}")

    first, middle, last = coefficients / scale
    if abs(first) < 1e-12 and abs(last) < 1e-12:
        candidates = [np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)]
    elif abs(first) >= abs(last):
        candidates = [np.array([r, 1], dtype=complex) for r in np.roots([first, middle, last])]
    else:
        candidates = [np.array([1, r], dtype=complex) for r in np.roots([last, middle, first])]

    roots = []
    for vec in candidates:
        vec = vec / np.linalg.norm(vec)
        if all(abs(np.vdot(seen, vec)) < ROOT_DUPLICATE for seen in roots):
            roots.append(vec)
    return [(complex(vec[0]), complex(vec[1])) for vec in roots]


def raw_rays(canon: CanonicalForm, z, x, y) -> dict:
    """The six unnormalized kets in the canonical basis."""
    m = build_matrices(canon, z, x, y)
    a1 = np.array([x, y], dtype=complex)
    C_dag_C = m.C.conj().T @ m.C

    rays = {
        "a1": a1,
        "b1": C_dag_C @ a1,
        "a2": J @ m.C @ C_dag_C @ a1,
        "b2": J @ m.C @ a1,
        "a3": J @ m.D.T @ np.conj(m.C) @ np.conj(a1),
        "b3": np.array([1, m.z], dtype=complex),
    }
    for name, ray in rays.items():
        if np.linalg.norm(ray) < ZERO_RAY_NORM:
            raise ZeroRayError(verboseMessage=f"{name} at z={m.z!r}, (x, y)=({m.x!r}, {m.y!r})")
    return rays


def _canonical_settings(canon: CanonicalForm, z, x, y) -> HardySettings:
    rays = raw_rays(canon, z, x, y)
    return HardySettings.from_rays(
        [rays["a1"], rays["a2"], rays["a3"]],
        [rays["b1"], rays["b2"], rays["b3"]],
        {"source": "construction", "z": complex(z), "x": complex(x), "y": complex(y)},
    )


def settings_from_xyz(canon: CanonicalForm, z, x, y) -> HardySettings:
    """Settings for (z, x, y), expressed in the original basis and party order."""
    canonical = _canonical_settings(canon, z, x, y)
    a_rays = canon.pull_back([pair.a0.comps for pair in canonical])
    b_rays = canon.pull_back([pair.b0.comps for pair in canonical])
    return HardySettings.from_rays(a_rays, b_rays, dict(canonical.provenance))


def success_probability_identity(canon: CanonicalForm, z, x, y) -> tuple:
    """
    lhs = |<psi|a1 a2 a3>|^2 on raw kets,
    rhs = (a1^T (C^T C*)^2 a1*)^2 |det D|^2.
    """
    rays = raw_rays(canon, z, x, y)
    m = build_matrices(canon, z, x, y)
    lhs = abs(contract(canon.amplitudes(), [rays["a1"], rays["a2"], rays["a3"]])) ** 2

    a1 = rays["a1"]
    M = m.C.T @ np.conj(m.C)
    quadratic = (a1 @ M @ M @ np.conj(a1)).real
    rhs = quadratic ** 2 * abs(np.linalg.det(m.D)) ** 2
    return float(lhs), float(rhs)


def default_z_candidates(seed: int = 0) -> list:
    angles = 2 * np.pi * np.arange(16) / 16
    circles = [radius * np.exp(1j * angle) for radius in (0.5, 1.0, 2.0) for angle in angles]
    scattered = random_complex(make_rng(seed, STREAM_Z_CANDIDATES), 16)
    return [complex(z) for z in circles] + [complex(z) for z in scattered]


def evaluate_conditions(
    state: PureState,
    settings,
    tol_zero: float = 1e-9,
    tol_pos: float = 1e-12,
    flags=(),
) -> ConditionReport:
    if state.n != 3:
        raise DimensionMismatchError(f"Three-party conditions need a 3-party state, got {state.n}")
    return evaluate_hardy_n(state, settings, tol_zero=tol_zero, tol_pos=tol_pos, flags=flags)


def _candidate_roots(canon: CanonicalForm, z, seed: int, index: int) -> tuple:
    try:
        return solve_xy(canon, z), ()
    except DegenerateQuadraticError:
        rng = make_rng(seed, STREAM_DEGENERATE_XY, index)
        samples = [random_unit_vector(rng, 2) for _ in range(DEGENERATE_SAMPLES)]
        return [(complex(v[0]), complex(v[1])) for v in samples], ("degenerate_quadratic",)


def construct_test(
    canon: CanonicalForm,
    z_candidates=None,
    tol_zero: float = 1e-9,
    tol_pos: float = 1e-12,
    seed: int = 0,
):
    """
    Scan z, solve for (x, y) and keep the passing settings with the largest
    P(a1 a2 a3). Ties resolve to the earliest candidate.
    """
    if z_candidates is None:
        z_candidates = default_z_candidates(seed)

    state = canon.to_state()
    best: Optional[tuple] = None
    best_seen = 0.0

    for index, z in enumerate(z_candidates):
        if abs(np.linalg.det(build_matrices(canon, z, 1, 0).C)) <= DET_C_MIN:
            continue

        roots, flags = _candidate_roots(canon, z, seed, index)
        for x, y in roots:
            try:
                settings = _canonical_settings(canon, z, x, y)
            except ZeroRayError:
                continue

            report = evaluate_conditions(state, settings, tol_zero, tol_pos, flags)
            best_seen = max(best_seen, report.p_pos)
            if report.passed and (best is None or report.p_pos > best[1].p_pos):
                best = ((z, x, y), report)

    if best is None:
        raise ConstructionFailedError(
            verboseMessage=f"{len(z_candidates)} z candidates scanned, largest P(aaa)={best_seen:.3e}"
        )

    (z, x, y), report = best
    logging.info(f"Hardy test constructed at z={z:.6g}, P(aaa)={report.p_pos:.6g}")
    return settings_from_xyz(canon, z, x, y), report
