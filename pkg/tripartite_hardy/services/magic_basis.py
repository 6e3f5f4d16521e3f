"""
Closest product states, magic bases and the (h, u, v, s, t) canonical form of
three-qubit pure states.

A magic basis is a local product basis in which <psi|0...0> != 0 and every
amplitude with a single party excited above |0> vanishes. The closest product
state, taken as |0...0>, always yields one.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import permutations
from typing import Optional

import numpy as np
from scipy.linalg import null_space

from tripartite_hardy.services.random_streams import STREAM_PRODUCT_RESTART, make_rng, random_unit_vector
from tripartite_hardy.services.tensor_core import PureState, local_basis_change, reduced_rank
from tripartite_hardy.utils.constants import CLASSIFY_TOL, MAGIC_RESIDUAL_MAX, MAGIC_RESIDUAL_TARGET
from tripartite_hardy.utils.errors import (
    DimensionMismatchError,
    MagicResidualTooLargeError,
    NotFullyEntangledError,
    NotMagicBasisError,
)

CANONICAL_INDICES = {
    "u": (0, 1, 1),
    "v": (1, 0, 1),
    "s": (1, 1, 0),
    "t": (1, 1, 1),
}


@dataclass(frozen=True, eq=False)
class ProductAnsatz:
    vectors: tuple
    overlap_h: complex
    converged: bool
    restart: int
    iterations: int


@dataclass(frozen=True, eq=False)
class MagicBasisTransform:
    """
    Per-party unitaries taking original-basis coordinates to magic-basis
    coordinates, plus the largest single-excitation amplitude left behind.
    """
    unitaries: tuple
    residual: float = 0.0

    @classmethod
    def identity(cls, dims) -> "MagicBasisTransform":
        return cls(unitaries=tuple(np.eye(d, dtype=complex) for d in dims), residual=0.0)

    def pull_back(self, party: int, vector) -> np.ndarray:
        return self.unitaries[party].conj().T @ np.asarray(vector, dtype=complex)

    def then(self, diagonals) -> "MagicBasisTransform":
        """Compose with a further local change applied after this one."""
        return MagicBasisTransform(
            unitaries=tuple(d @ u for d, u in zip(diagonals, self.unitaries)),
            residual=self.residual,
        )


class StateTag(Enum):
    ASYMMETRIC = "Asymmetric"
    SYMMETRIC_PASSING = "SymmetricPassing"
    SYMMETRIC_FAILING = "SymmetricFailing"


class FailureKind(Enum):
    GHZ_LIKE = "GHZlike"
    EQUAL_HS_T_NONZERO = "EqualHS_tNonzero"
    EQUAL_ABS_HS_T_ZERO = "EqualAbsHS_tZero"


@dataclass(frozen=True)
class StateClass:
    tag: StateTag
    subtag: Optional[FailureKind] = None

    @property
    def symmetric(self) -> bool:
        return self.tag is not StateTag.ASYMMETRIC

    def __str__(self):
        if self.subtag is None:
            return self.tag.value
        return f"{self.tag.value}/{self.subtag.value}"


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    """
    psi = h*|000> + u|011> + v|101> + s|110> + t|111> in the canonical basis.

    ``party_permutation[j]`` is the original party placed at canonical
    position j; ``transform`` maps original coordinates (original party order)
    into the phase-fixed magic basis.
    """
    h: complex
    u: float
    v: float
    s: float
    t: float
    party_permutation: tuple = (0, 1, 2)
    transform: Optional[MagicBasisTransform] = None
    closest_overlap: Optional[complex] = None

    @classmethod
    def from_coefficients(cls, h, u, v, s, t) -> "CanonicalForm":
        """Canonical form in its own basis, normalized."""
        norm = np.sqrt(abs(h) ** 2 + u ** 2 + v ** 2 + s ** 2 + t ** 2)
        return cls(h=complex(h) / norm, u=u / norm, v=v / norm, s=s / norm, t=t / norm)

    @property
    def coefficients(self) -> tuple:
        return self.h, self.u, self.v, self.s, self.t

    def amplitudes(self) -> np.ndarray:
        amps = np.zeros((2, 2, 2), dtype=complex)
        amps[0, 0, 0] = np.conj(self.h)
        for name, index in CANONICAL_INDICES.items():
            amps[index] = getattr(self, name)
        return amps

    def to_state(self) -> PureState:
        return PureState.from_array(self.amplitudes())

    def pull_back(self, vectors) -> list:
        """
        Map one vector per canonical party back to the original basis,
        returned in original party order.
        """
        pulled = [None] * 3
        for j, vec in enumerate(vectors):
            original = self.party_permutation[j]
            if self.transform is None:
                pulled[original] = np.asarray(vec, dtype=complex)
            else:
                pulled[original] = self.transform.pull_back(original, vec)
        return pulled

    def original_state(self) -> PureState:
        """Undo permutation and basis change on the canonical amplitudes."""
        amps = np.transpose(self.amplitudes(), np.argsort(self.party_permutation))
        state = PureState.from_array(amps)
        if self.transform is None:
            return state
        return local_basis_change(state, [u.conj().T for u in self.transform.unitaries])


def _party_contraction(amps: np.ndarray, vectors, party: int) -> np.ndarray:
    """w[i] = sum psi[.., i, ..] prod_{j != party} conj(v_j)."""
    result = amps
    # contract from the last axis so lower axis numbers stay valid
    for j in reversed(range(amps.ndim)):
        if j == party:
            continue
        result = np.tensordot(result, np.conj(vectors[j]), axes=([j], [0]))
    return result


def _orthogonal_residual(w: np.ndarray, p: np.ndarray) -> float:
    return float(np.linalg.norm(w - np.vdot(p, w) * p))


def _alternating_ascent(amps, vectors, max_iters, tol, rng):
    value = 0.0
    residual = np.inf

    for iteration in range(1, max_iters + 1):
        for k in range(amps.ndim):
            w = _party_contraction(amps, vectors, k)
            norm = np.linalg.norm(w)
            vectors[k] = w / norm if norm > 1e-300 else random_unit_vector(rng, amps.shape[k])

        previous = value
        residual = 0.0
        for k in range(amps.ndim):
            w = _party_contraction(amps, vectors, k)
            residual = max(residual, _orthogonal_residual(w, vectors[k]))
            if k == 0:
                value = float(abs(np.vdot(vectors[0], w)))

        if value - previous < tol and residual < MAGIC_RESIDUAL_TARGET:
            return vectors, value, True, iteration

    return vectors, value, False, max_iters


def closest_product_state(
    state: PureState,
    restarts: int = 24,
    max_iters: int = 500,
    tol: float = 1e-13,
    seed: int = 0,
) -> ProductAnsatz:
    """
    Maximize |<psi|p1...pn>| by alternating updates from ``restarts`` seeded
    random starts and keep the best local optimum. An optimum that never met
    ``tol`` is still returned, with ``converged=False``.
    """
    best = None

    for restart in range(restarts):
        rng = make_rng(seed, STREAM_PRODUCT_RESTART, restart)
        start = [random_unit_vector(rng, d) for d in state.dims]
        vectors, value, converged, iterations = _alternating_ascent(state.amps, start, max_iters, tol, rng)

        if best is None or value > best[1]:
            best = (vectors, value, converged, restart, iterations)

    vectors, value, converged, restart, iterations = best
    overlap_h = np.conj(np.vdot(vectors[0], _party_contraction(state.amps, vectors, 0)))

    if not converged:
        logging.warning(f"Closest product state did not converge within {max_iters} iterations")

    return ProductAnsatz(
        vectors=tuple(vectors),
        overlap_h=complex(overlap_h),
        converged=converged,
        restart=restart,
        iterations=iterations,
    )


def single_excitation_residual(amps: np.ndarray) -> float:
    residual = 0.0
    for k, d in enumerate(amps.shape):
        for i in range(1, d):
            index = [0] * amps.ndim
            index[k] = i
            residual = max(residual, abs(amps[tuple(index)]))
    return float(residual)


def to_magic_basis(state: PureState, ansatz: ProductAnsatz):
    unitaries = []
    for p in ansatz.vectors:
        p = np.asarray(p, dtype=complex)
        p = p / np.linalg.norm(p)
        basis = np.column_stack([p, null_space(p.conj()[None, :])])
        unitaries.append(basis.conj().T)

    magic_state = local_basis_change(state, unitaries)
    residual = single_excitation_residual(magic_state.amps)

    if abs(magic_state.amps[(0,) * state.n]) < MAGIC_RESIDUAL_MAX or residual >= MAGIC_RESIDUAL_MAX:
        raise MagicResidualTooLargeError(verboseMessage=f"residual={residual!r}")

    return magic_state, MagicBasisTransform(unitaries=tuple(unitaries), residual=residual)


def _phase_diagonals(amps: np.ndarray) -> list:
    """
    Per-party diagonal phases making the |011>, |101>, |110>, |111>
    amplitudes real and nonnegative (minimum-norm solution of a rank-4 system).
    """
    rows = []
    rhs = []
    for index in CANONICAL_INDICES.values():
        row = np.zeros(6)
        for party, bit in enumerate(index):
            row[2 * party + bit] = 1.0
        rows.append(row)
        rhs.append(-np.angle(amps[index]))

    phases, *_ = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)
    return [np.diag(np.exp(1j * phases[2 * k:2 * k + 2])) for k in range(3)]


def _relabeling(h, missing, t, tol) -> tuple:
    """First permutation (lexicographic) giving |h| != s, u > 0, t + s + v > 0."""
    has_zero = min(missing) < tol
    for perm in permutations(range(3)):
        u, v, s = (missing[k] for k in perm)
        s_ok = s < tol if has_zero else abs(s - abs(h)) > tol
        if s_ok and u > tol and t + s + v > tol:
            return perm

    logging.warning("No party relabeling satisfies the genericity conditions; keeping the input order")
    return (0, 1, 2)


def canonical_form_3qubit(
    magic_state: PureState,
    transform: Optional[MagicBasisTransform] = None,
    tol: float = CLASSIFY_TOL,
    closest_overlap: Optional[complex] = None,
) -> CanonicalForm:
    if magic_state.dims != (2, 2, 2):
        raise DimensionMismatchError("Canonical form is defined for three qubits")
    if single_excitation_residual(magic_state.amps) >= MAGIC_RESIDUAL_MAX or abs(magic_state.amps[0, 0, 0]) < tol:
        raise NotMagicBasisError()
    for k in range(3):
        if reduced_rank(magic_state, k) < 2:
            raise NotFullyEntangledError(verboseMessage=f"party {k + 1} is not entangled with the rest")

    diagonals = _phase_diagonals(magic_state.amps)
    fixed = local_basis_change(magic_state, diagonals)
    if transform is None:
        transform = MagicBasisTransform.identity(magic_state.dims)
    transform = transform.then(diagonals)

    amps = fixed.amps
    h = complex(np.conj(amps[0, 0, 0]))
    u, v, s, t = (float(abs(amps[index])) for index in CANONICAL_INDICES.values())

    perm = (0, 1, 2)
    if not (abs(u - v) < tol and abs(v - s) < tol):
        perm = _relabeling(h, (u, v, s), t, tol)
        u, v, s = ((u, v, s)[k] for k in perm)

    logging.info(f"Canonical form h={h:.6g} u={u:.6g} v={v:.6g} s={s:.6g} t={t:.6g} perm={perm}")
    return CanonicalForm(
        h=h, u=u, v=v, s=s, t=t,
        party_permutation=tuple(perm),
        transform=transform,
        closest_overlap=closest_overlap,
    )


def find_magic_basis(state: PureState, restarts: int = 24, seed: int = 0, max_iters: int = 500, max_retries: int = 3):
    """
    Closest product state -> magic basis, doubling the search effort while
    the magic residual stays too large. Works for any local dimensions.
    """
    for attempt in range(max_retries + 1):
        ansatz = closest_product_state(state, restarts=restarts, max_iters=max_iters, seed=seed)
        try:
            magic_state, transform = to_magic_basis(state, ansatz)
            break
        except MagicResidualTooLargeError:
            if attempt == max_retries:
                raise
            restarts *= 2
            max_iters *= 2
            logging.warning(f"Retrying closest product search with {restarts} restarts")

    return magic_state, transform, ansatz


def canonicalize(state: PureState, restarts: int = 24, seed: int = 0, max_iters: int = 500, max_retries: int = 3):
    magic_state, transform, ansatz = find_magic_basis(state, restarts, seed, max_iters, max_retries)
    canon = canonical_form_3qubit(magic_state, transform, closest_overlap=ansatz.overlap_h)
    return canon, magic_state, ansatz


def classify(canon: CanonicalForm, tol: float = CLASSIFY_TOL) -> StateClass:
    h, u, v, s, t = canon.coefficients

    if not (abs(u - v) < tol and abs(v - s) < tol):
        return StateClass(StateTag.ASYMMETRIC)

    if s < tol:
        return StateClass(StateTag.SYMMETRIC_FAILING, FailureKind.GHZ_LIKE)
    if t >= tol and abs(h - s) < tol:
        return StateClass(StateTag.SYMMETRIC_FAILING, FailureKind.EQUAL_HS_T_NONZERO)
    if t < tol and abs(abs(h) - s) < tol:
        return StateClass(StateTag.SYMMETRIC_FAILING, FailureKind.EQUAL_ABS_HS_T_ZERO)

    return StateClass(StateTag.SYMMETRIC_PASSING)
