"""
Local projection of a tripartite qudit state, given in a magic basis, onto a
fully entangled three-qubit state.

Every retained two-dimensional subspace contains |0>, and its second ket is
orthogonal to |0>, so the projected state is still in a magic basis.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product

import numpy as np

from tripartite_hardy.services.magic_basis import single_excitation_residual
from tripartite_hardy.services.random_streams import STREAM_QUDIT_FALLBACK, make_rng, random_complex
from tripartite_hardy.services.tensor_core import PureState, is_fully_entangled
from tripartite_hardy.utils.constants import MAGIC_RESIDUAL_MAX, PROPORTIONAL_OVERLAP
from tripartite_hardy.utils.errors import (
    ConstructionFailedError,
    DimensionMismatchError,
    NotEntangledError,
    NotMagicBasisError,
    ProportionalityAmbiguousError,
)

AMBIGUITY_WINDOW = 1e-5
FALLBACK_ATTEMPTS = 16


class ReductionBranch(Enum):
    IDENTITY = "Identity"
    T_NONZERO = "TNonzero"
    T_ZERO = "TZero"
    T_ZERO_RANDOM = "TZeroRandom"


@dataclass(frozen=True, eq=False)
class SubspaceRecord:
    """
    ``kets[k]`` is a 2 x d_k array whose rows are the orthonormal kets kept
    for party k; row 0 is always |0>.
    """
    kets: tuple
    branch: ReductionBranch

    @classmethod
    def identity(cls) -> "SubspaceRecord":
        return cls(kets=tuple(np.eye(2, dtype=complex) for _ in range(3)), branch=ReductionBranch.IDENTITY)

    def embed(self, party: int, vector) -> np.ndarray:
        """Qubit coordinates of ``party`` -> magic-basis qudit coordinates."""
        return self.kets[party].T @ np.asarray(vector, dtype=complex)

    def project(self, amps: np.ndarray) -> np.ndarray:
        K1, K2, K3 = (np.conj(kets) for kets in self.kets)
        return np.einsum("ia,jb,kc,abc->ijk", K1, K2, K3, amps)


def _basis_pair(dim: int, index: int) -> np.ndarray:
    kets = np.zeros((2, dim), dtype=complex)
    kets[0, 0] = 1
    kets[1, index] = 1
    return kets


def _pair_with_ket(dim: int, ket) -> np.ndarray:
    kets = np.zeros((2, dim), dtype=complex)
    kets[0, 0] = 1
    kets[1] = ket
    return kets


def _projected_state(amps, record: SubspaceRecord):
    projected = record.project(amps)
    if np.linalg.norm(projected) < 1e-12:
        return None
    state = PureState.from_array(projected)
    return state if is_fully_entangled(state) else None


def _largest_t(amps: np.ndarray, tol: float):
    t_block = amps[1:, 1:, 1:]
    if t_block.size == 0 or np.max(np.abs(t_block)) <= tol:
        return None
    j, k, l = np.unravel_index(np.argmax(np.abs(t_block)), t_block.shape)
    return int(j) + 1, int(k) + 1, int(l) + 1


def _third_party_ket(phi: np.ndarray, phi_prime: np.ndarray, tol: float):
    """
    A ket overlapping both phi and phi_prime when they are nonzero: phi itself
    when the two are proportional, their normalized sum otherwise.
    """
    norm, norm_prime = np.linalg.norm(phi), np.linalg.norm(phi_prime)
    if norm <= tol and norm_prime <= tol:
        return None
    if norm_prime <= tol:
        return phi / norm
    if norm <= tol:
        return phi_prime / norm_prime

    hat, hat_prime = phi / norm, phi_prime / norm_prime
    alignment = abs(np.vdot(hat, hat_prime))
    if alignment > PROPORTIONAL_OVERLAP:
        return hat
    if 1 - alignment < AMBIGUITY_WINDOW:
        raise ProportionalityAmbiguousError(verboseMessage=f"|<phi|phi'>|={alignment!r}")
    combined = hat + hat_prime
    return combined / np.linalg.norm(combined)


def _t_zero_candidates(amps: np.ndarray, tol: float):
    """Yield (score, record) for every (p, j) choice of the first two parties."""
    d1, d2, d3 = amps.shape
    ambiguous = 0
    for p, j in product(range(1, d1), range(1, d2)):
        phi = amps[0, j, :].copy()
        phi_prime = amps[p, 0, :].copy()
        # residual single excitations
        phi[0] = phi_prime[0] = 0
        try:
            ket = _third_party_ket(phi, phi_prime, tol)
        except ProportionalityAmbiguousError:
            ambiguous += 1
            continue
        if ket is None:
            continue

        u, v, s = abs(np.vdot(ket, phi)), abs(np.vdot(ket, phi_prime)), abs(amps[p, j, 0])
        score = sorted((u, v, s))[1]
        if score <= tol:
            continue
        record = SubspaceRecord(
            kets=(_basis_pair(d1, p), _basis_pair(d2, j), _pair_with_ket(d3, ket)),
            branch=ReductionBranch.T_ZERO,
        )
        yield score, record

    if ambiguous:
        logging.debug(f"Skipped {ambiguous} ambiguous proportionality tests")


def _random_record(amps: np.ndarray, seed: int, attempt: int) -> SubspaceRecord:
    rng = make_rng(seed, STREAM_QUDIT_FALLBACK, attempt)
    kets = []
    for dim in amps.shape:
        ket = np.zeros(dim, dtype=complex)
        ket[1:] = random_complex(rng, dim - 1)
        kets.append(_pair_with_ket(dim, ket / np.linalg.norm(ket)))
    return SubspaceRecord(kets=tuple(kets), branch=ReductionBranch.T_ZERO_RANDOM)


def reduce_to_3qubit(magic_state: PureState, tol: float = 1e-10, seed: int = 0):
    """Return (three-qubit state, SubspaceRecord)."""
    if magic_state.n != 3:
        raise DimensionMismatchError(f"Reduction needs a 3-party state, got {magic_state.n}")
    if any(d < 2 for d in magic_state.dims):
        raise NotEntangledError(verboseMessage=f"dims={magic_state.dims}")

    amps = magic_state.amps
    if abs(amps[0, 0, 0]) <= tol or single_excitation_residual(amps) >= MAGIC_RESIDUAL_MAX:
        raise NotMagicBasisError()
    if not is_fully_entangled(magic_state):
        raise NotEntangledError()

    if magic_state.dims == (2, 2, 2):
        return magic_state, SubspaceRecord.identity()

    chosen = _largest_t(amps, tol)
    if chosen is not None:
        record = SubspaceRecord(
            kets=tuple(_basis_pair(d, index) for d, index in zip(magic_state.dims, chosen)),
            branch=ReductionBranch.T_NONZERO,
        )
        reduced = _projected_state(amps, record)
        if reduced is not None:
            logging.info(f"Reduced to three qubits on levels {chosen}")
            return reduced, record

    ranked = sorted(_t_zero_candidates(amps, tol), key=lambda item: -item[0])
    for _, record in ranked:
        reduced = _projected_state(amps, record)
        if reduced is not None:
            logging.info("Reduced to three qubits with a vanishing |111> amplitude")
            return reduced, record

    for attempt in range(FALLBACK_ATTEMPTS):
        record = _random_record(amps, seed, attempt)
        reduced = _projected_state(amps, record)
        if reduced is not None:
            logging.info(f"Reduced to three qubits on random excited subspaces (attempt {attempt})")
            return reduced, record

    raise ConstructionFailedError(verboseMessage="no three-qubit subspace keeps the state fully entangled")
