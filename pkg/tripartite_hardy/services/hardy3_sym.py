"""
Hardy test for symmetric canonical states (u = v = s), where parties 1 and 2
measure identically:

    a1 = a2 = |x> = |0> + x|1>      b1 = b2 = J D D^+ |x*>
    b3 = D^+ |x*>                   a3 = J D^T D* D^T |x>

with D = D0 + x D1. Then <psi|a1 a2 a3> = -R(x) det D, where R is a
polynomial in x and x*.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from tripartite_hardy.services.hardy3 import J, HardySettings, operator_components
from tripartite_hardy.services.hardy_n import ConditionReport, chenq_zero_words, evaluate_hardy_n
from tripartite_hardy.services.magic_basis import CanonicalForm
from tripartite_hardy.services.random_streams import STREAM_SYMMETRIC_GRID, make_rng
from tripartite_hardy.services.tensor_core import PureState
from tripartite_hardy.utils.constants import CLASSIFY_TOL, ZERO_RAY_NORM
from tripartite_hardy.utils.errors import (
    ConstructionFailedError,
    DimensionMismatchError,
    NotEntangledError,
    ZeroRayError,
)

GRID_SIZE = 32
GRID_RANGE = (0.05, 20.0)


@dataclass(frozen=True, eq=False)
class SymmetricCanon:
    """h*|000> + s(|011> + |101> + |110>) + t|111>."""
    h: complex
    s: float
    t: float
    canonical: Optional[CanonicalForm] = None

    @classmethod
    def from_canonical(cls, canon: CanonicalForm, tol: float = CLASSIFY_TOL) -> "SymmetricCanon":
        if max(abs(canon.u - canon.s), abs(canon.v - canon.s)) > tol:
            raise ConstructionFailedError(
                verboseMessage=f"u={canon.u:.6g}, v={canon.v:.6g}, s={canon.s:.6g} are not equal"
            )
        return cls(h=canon.h, s=canon.s, t=canon.t, canonical=canon)

    @classmethod
    def from_coefficients(cls, h, s, t) -> "SymmetricCanon":
        return cls.from_canonical(CanonicalForm.from_coefficients(h, s, s, s, t))

    @property
    def form(self) -> CanonicalForm:
        if self.canonical is not None:
            return self.canonical
        return CanonicalForm.from_coefficients(self.h, self.s, self.s, self.s, self.t)

    def amplitudes(self) -> np.ndarray:
        return self.form.amplitudes()

    def to_state(self) -> PureState:
        return self.form.to_state()

    def d_matrix(self, x) -> np.ndarray:
        _, _, D0, D1 = operator_components(self.amplitudes())
        return D0 + complex(x) * D1


def _ket(x) -> np.ndarray:
    return np.array([1, x], dtype=complex)


def r_value(canon: SymmetricCanon, x) -> complex:
    """R(x) = <x_bar| D* D^T |x> with <x_bar| = (x, -1)."""
    D = canon.d_matrix(x)
    return complex(np.array([x, -1], dtype=complex) @ np.conj(D) @ D.T @ _ket(x))


def r_polynomial(canon: SymmetricCanon, x) -> complex:
    """R(x) expanded in powers of x and x*."""
    h, s, t = canon.form.h, canon.form.s, canon.form.t
    x = complex(x)
    xc = np.conj(x)
    r2 = abs(x) ** 2
    return complex(
        (abs(h) ** 2 - 2 * s ** 2) * x
        - h * s * xc
        - s * t * x ** 2
        - 2 * s * t * r2
        + (s ** 2 - t ** 2) * r2 * x
        + np.conj(h) * s * x ** 3
        + s * t * r2 * x ** 2
    )


def symmetric_rays(canon: SymmetricCanon, x) -> dict:
    """The six unnormalized kets in the canonical basis."""
    D = canon.d_matrix(x)
    ket = _ket(x)
    ket_conj = np.conj(ket)

    b12 = J @ D @ D.conj().T @ ket_conj
    rays = {
        "a1": ket,
        "a2": ket,
        "b1": b12,
        "b2": b12,
        "b3": D.conj().T @ ket_conj,
        "a3": J @ D.T @ np.conj(D) @ D.T @ ket,
    }
    for name, ray in rays.items():
        if np.linalg.norm(ray) < ZERO_RAY_NORM:
            raise ZeroRayError(verboseMessage=f"{name} at x={complex(x)!r}")
    return rays


def _canonical_settings(canon: SymmetricCanon, x) -> HardySettings:
    rays = symmetric_rays(canon, x)
    return HardySettings.from_rays(
        [rays["a1"], rays["a2"], rays["a3"]],
        [rays["b1"], rays["b2"], rays["b3"]],
        {"source": "symmetric", "x": complex(x)},
    )


def symmetric_settings(canon: SymmetricCanon, x) -> HardySettings:
    """Settings for parameter x, in the original basis and party order."""
    canonical = _canonical_settings(canon, x)
    form = canon.form
    a_rays = form.pull_back([pair.a0.comps for pair in canonical])
    b_rays = form.pull_back([pair.b0.comps for pair in canonical])
    return HardySettings.from_rays(a_rays, b_rays, dict(canonical.provenance))


def evaluate_chenq_conditions(
    state: PureState,
    settings,
    tol_zero: float = 1e-9,
    tol_pos: float = 1e-12,
) -> ConditionReport:
    if state.n != 3:
        raise DimensionMismatchError(f"Three-party conditions need a 3-party state, got {state.n}")
    return evaluate_hardy_n(state, settings, tol_zero=tol_zero, tol_pos=tol_pos, zero_words=chenq_zero_words())


def modulus_grid(seed: int = 0) -> np.ndarray:
    low, high = np.log(GRID_RANGE[0]), np.log(GRID_RANGE[1])
    return np.exp(make_rng(seed, STREAM_SYMMETRIC_GRID).uniform(low, high, GRID_SIZE))


def default_phase(h) -> float:
    """Phase of x keeping 2*arg(x) away from arg(h) and arg(h) + pi."""
    return float(np.angle(h)) / 2 + np.pi / 4


def construct_symmetric_test(
    canon: SymmetricCanon,
    tol_zero: float = 1e-9,
    tol_pos: float = 1e-12,
    seed: int = 0,
):
    if canon.s <= CLASSIFY_TOL and canon.t <= CLASSIFY_TOL:
        raise NotEntangledError(verboseMessage="symmetric canonical form with s = t = 0")

    state = canon.to_state()
    phase = np.exp(1j * default_phase(canon.form.h))
    best = None

    for modulus in modulus_grid(seed):
        x = complex(modulus * phase)
        try:
            settings = _canonical_settings(canon, x)
        except ZeroRayError:
            continue

        report = evaluate_chenq_conditions(state, settings, tol_zero, tol_pos)
        if report.passed and (best is None or report.p_pos > best[1].p_pos):
            best = (x, report)

    if best is None:
        raise ConstructionFailedError(verboseMessage=f"no modulus in a {GRID_SIZE}-point grid passed")

    x, report = best
    logging.info(f"Symmetric Hardy test constructed at x={x:.6g}, P(aaa)={report.p_pos:.6g}")
    return symmetric_settings(canon, x), report
