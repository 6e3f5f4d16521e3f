"""
Dense complex amplitude tensors, dichotomic product measurements and the
Born-rule correlation tables every other service builds on.
"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

import numpy as np

from tripartite_hardy.utils.constants import NORMALIZATION_TOL, PROBABILITY_CLAMP, RANK_TOL, UNITARY_TOL
from tripartite_hardy.utils.errors import (
    DimensionMismatchError,
    IndexOutOfRangeError,
    InternalConsistencyError,
    NotUnitaryError,
    ParseError,
    ZeroStateError,
)

SETTINGS = ("a", "b")
ZERO_NORM = 1e-15
DEPENDENT_RAY_NORM = 1e-9


def _setting_index(label) -> int:
    if label in (0, 1):
        return int(label)
    try:
        return SETTINGS.index(label)
    except ValueError:
        raise DimensionMismatchError(f"Unknown setting label {label!r}")


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized pure state over ``len(dims)`` parties, amplitudes indexed (i1, ..., in)."""
    dims: tuple
    amps: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amps, dtype=complex)
        dims = tuple(int(d) for d in self.dims)

        if amps.shape != dims:
            raise DimensionMismatchError(
                "Amplitude tensor shape does not match dims",
                verboseMessage=f"shape={amps.shape}, dims={dims}"
            )
        if not np.all(np.isfinite(amps)):
            raise ParseError("Amplitudes must be finite numbers")

        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise InternalConsistencyError(f"State is not normalized (norm={norm!r})")

        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amps", amps)

    @property
    def n(self) -> int:
        return len(self.dims)

    @classmethod
    def from_array(cls, array) -> "PureState":
        """Normalize an arbitrary nonzero amplitude tensor."""
        amps = np.asarray(array, dtype=complex)
        if not np.all(np.isfinite(amps)):
            raise ParseError("Amplitudes must be finite numbers")

        norm = np.linalg.norm(amps)
        if norm < ZERO_NORM:
            raise ZeroStateError()

        return cls(dims=amps.shape, amps=amps / norm)

    def permuted(self, order: Sequence[int]) -> "PureState":
        """New party j is old party ``order[j]``."""
        return PureState(dims=tuple(self.dims[k] for k in order), amps=np.transpose(self.amps, order))


@dataclass(frozen=True, eq=False)
class LocalVector:
    """Unnormalized single-party ket; normalized wherever a probability is taken."""
    party: int
    comps: np.ndarray

    def __post_init__(self):
        comps = np.array(self.comps, dtype=complex).reshape(-1)
        if not np.all(np.isfinite(comps)) or np.linalg.norm(comps) < ZERO_NORM:
            raise ZeroStateError(f"Measurement vector for party {self.party} has zero norm")
        comps.setflags(write=False)
        object.__setattr__(self, "comps", comps)

    @property
    def dim(self) -> int:
        return self.comps.shape[0]

    def normalized(self) -> np.ndarray:
        return self.comps / np.linalg.norm(self.comps)


@dataclass(frozen=True, eq=False)
class MeasurementPair:
    """
    Two dichotomic observables of one party, given by their outcome-0 rays.

    Outcome 1 is the orthogonal complement of the outcome-0 ray within a
    two-dimensional measurement subspace. ``a1``/``b1`` span that complement
    when given; otherwise the subspace is the whole space, which for a qubit
    makes outcome 1 the orthogonal ray.
    """
    a0: LocalVector
    b0: LocalVector
    a1: Optional[LocalVector] = None
    b1: Optional[LocalVector] = None

    def __post_init__(self):
        for vec in (self.b0, self.a1, self.b1):
            if vec is not None and vec.dim != self.a0.dim:
                raise DimensionMismatchError("Observables a and b act on different dimensions")

        # outcome-1 rays are kept orthogonal to their outcome-0 ray
        for name, ray0 in (("a1", self.a0), ("b1", self.b0)):
            vec = getattr(self, name)
            if vec is None:
                continue
            hat = ray0.normalized()
            rest = vec.comps - np.vdot(hat, vec.comps) * hat
            if np.linalg.norm(rest) < DEPENDENT_RAY_NORM * np.linalg.norm(vec.comps):
                raise ZeroStateError(
                    f"Outcome-1 ray of observable {name[0]} for party {vec.party + 1} lies along its outcome-0 ray"
                )
            object.__setattr__(self, name, LocalVector(vec.party, rest))

    @classmethod
    def from_rays(cls, party: int, a0, b0, a1=None, b1=None) -> "MeasurementPair":
        return cls(
            a0=LocalVector(party, a0),
            b0=LocalVector(party, b0),
            a1=None if a1 is None else LocalVector(party, a1),
            b1=None if b1 is None else LocalVector(party, b1),
        )

    @property
    def party(self) -> int:
        return self.a0.party

    @property
    def dim(self) -> int:
        return self.a0.dim

    def ray(self, setting) -> np.ndarray:
        vec = self.a0 if _setting_index(setting) == 0 else self.b0
        return vec.normalized()

    def complement_ray(self, setting) -> Optional[LocalVector]:
        return self.a1 if _setting_index(setting) == 0 else self.b1

    def outcome_ray(self, setting, outcome: int) -> np.ndarray:
        """Normalized ray of an outcome; a bare qubit outcome 1 is J|ray*>."""
        ray = self.ray(setting)
        if outcome == 0:
            return ray
        complement = self.complement_ray(setting)
        if complement is not None:
            return complement.normalized()
        if self.dim != 2:
            raise DimensionMismatchError("Outcome-1 rays of a qudit party need a measurement subspace")
        return np.array([np.conj(ray[1]), -np.conj(ray[0])])

    def projector(self, setting, outcome: int) -> np.ndarray:
        ray = self.ray(setting)
        ket0 = np.outer(ray, np.conj(ray))
        if outcome == 0:
            return ket0
        complement = self.complement_ray(setting)
        if complement is None:
            return np.eye(self.dim) - ket0
        ray1 = complement.normalized()
        return np.outer(ray1, np.conj(ray1))

    def subspace_projector(self, setting) -> np.ndarray:
        return self.projector(setting, 0) + self.projector(setting, 1)

    @property
    def is_restricted(self) -> bool:
        """True when a measurement subspace smaller than the party's space is set."""
        return any(
            not np.allclose(self.subspace_projector(setting), np.eye(self.dim), atol=UNITARY_TOL)
            for setting in SETTINGS
        )

    def relabeled(self, party: int) -> "MeasurementPair":
        return MeasurementPair.from_rays(
            party,
            self.a0.comps,
            self.b0.comps,
            None if self.a1 is None else self.a1.comps,
            None if self.b1 is None else self.b1.comps,
        )

    def transformed(self, unitary) -> "MeasurementPair":
        """Co-transform every ray with a local basis change."""
        unitary = np.asarray(unitary, dtype=complex)
        return MeasurementPair.from_rays(
            self.party,
            unitary @ self.a0.comps,
            unitary @ self.b0.comps,
            None if self.a1 is None else unitary @ self.a1.comps,
            None if self.b1 is None else unitary @ self.b1.comps,
        )


@dataclass(frozen=True, eq=False)
class CorrelationTable:
    """Joint outcome distribution p[s1..sn, o1..on] (setting 0 = a, 1 = b)."""
    n: int
    p: np.ndarray

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        if p.shape != (2,) * (2 * self.n):
            raise DimensionMismatchError(f"Correlation table must have shape {(2,) * (2 * self.n)}")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    def flat(self) -> np.ndarray:
        return self.p.reshape(-1)

    def probability(self, choice, outcome) -> float:
        return float(self.p[tuple(_setting_index(c) for c in choice) + tuple(outcome)])

    def normalization_error(self) -> float:
        sums = self.p.reshape(2 ** self.n, 2 ** self.n).sum(axis=1)
        return float(np.max(np.abs(sums - 1.0)))

    def marginal(self, keep: Sequence[int], rest_settings: Sequence) -> np.ndarray:
        """
        Distribution of the parties in ``keep`` (array over their settings, then
        outcomes) with the remaining parties measured at ``rest_settings``.
        """
        keep = list(keep)
        rest = [k for k in range(self.n) if k not in keep]
        if len(rest_settings) != len(rest):
            raise DimensionMismatchError("One setting per marginalized party is required")

        index = [slice(None)] * (2 * self.n)
        for k, setting in zip(rest, rest_settings):
            index[k] = _setting_index(setting)
        sub = self.p[tuple(index)]

        # axes left: settings of kept parties, then all outcomes
        outcome_axes = tuple(len(keep) + k for k in rest)
        return sub.sum(axis=outcome_axes)

    def is_non_signaling(self, tol: float = 1e-10) -> bool:
        # single-party removals suffice: larger marginals follow by induction
        for k in range(self.n):
            summed = self.p.sum(axis=self.n + k)
            if np.max(np.abs(summed.take(0, axis=k) - summed.take(1, axis=k))) > tol:
                return False
        return True

    def mixed_with(self, other: "CorrelationTable", weight: float) -> "CorrelationTable":
        """(1 - weight) * self + weight * other."""
        return CorrelationTable(n=self.n, p=(1 - weight) * self.p + weight * other.p)

    def validate(self, tol: float = 1e-10):
        if np.min(self.p) < -PROBABILITY_CLAMP:
            raise InternalConsistencyError("Correlation table has negative entries")
        if self.normalization_error() > tol:
            raise InternalConsistencyError("Correlation table is not normalized per setting")
        if not self.is_non_signaling(tol):
            raise InternalConsistencyError("Correlation table is signaling")


def make_state(dims: Sequence[int], entries) -> PureState:
    """
    Build a normalized state from sparse ``(index tuple, amplitude)`` entries.
    Unspecified amplitudes are zero; repeated indices accumulate.
    """
    dims = tuple(int(d) for d in dims)
    if len(dims) < 2 or any(d < 1 for d in dims):
        raise DimensionMismatchError("A state needs at least two parties of positive dimension")

    amps = np.zeros(dims, dtype=complex)
    for index, value in entries:
        index = tuple(int(i) for i in index)
        if len(index) != len(dims) or any(not 0 <= i < d for i, d in zip(index, dims)):
            raise IndexOutOfRangeError(verboseMessage=f"index={index}, dims={dims}")
        amps[index] += complex(value)

    return PureState.from_array(amps)


def _check_vectors(state: PureState, vectors) -> list:
    if len(vectors) != state.n:
        raise DimensionMismatchError(f"Expected {state.n} local vectors, got {len(vectors)}")

    normalized = []
    for k, vec in enumerate(vectors):
        if not isinstance(vec, LocalVector):
            vec = LocalVector(k, vec)
        if vec.dim != state.dims[k]:
            raise DimensionMismatchError(
                f"Vector for party {k + 1} has dimension {vec.dim}, expected {state.dims[k]}"
            )
        normalized.append(vec.normalized())
    return normalized


def contract(amps: np.ndarray, vectors) -> complex:
    """Raw sum_i conj(amps[i]) * v1[i1] * ... * vn[in], no normalization."""
    result = np.conj(amps)
    for vec in vectors:
        result = np.tensordot(np.asarray(vec), result, axes=([0], [0]))
    return complex(result)


def overlap(state: PureState, vectors) -> complex:
    """<psi| v1 ... vn> with every vector normalized first."""
    return contract(state.amps, _check_vectors(state, vectors))


def _clamp(value: float) -> float:
    if value < -PROBABILITY_CLAMP:
        raise InternalConsistencyError(f"Negative probability {value!r}")
    return max(float(value), 0.0)


def _apply_local(amps: np.ndarray, party: int, matrix: np.ndarray) -> np.ndarray:
    return np.moveaxis(np.tensordot(matrix, amps, axes=([1], [party])), 0, party)


def _check_settings(state: PureState, settings) -> None:
    if len(settings) != state.n:
        raise DimensionMismatchError(f"Expected {state.n} measurement pairs, got {len(settings)}")
    for k, pair in enumerate(settings):
        if pair.dim != state.dims[k]:
            raise DimensionMismatchError(
                f"Settings for party {k + 1} have dimension {pair.dim}, expected {state.dims[k]}"
            )


def joint_probability(state: PureState, settings, choice, outcome) -> float:
    """Born probability of ``outcome`` when party k measures ``choice[k]``."""
    _check_settings(state, settings)
    if len(choice) != state.n or len(outcome) != state.n:
        raise DimensionMismatchError("choice and outcome need one entry per party")

    projected = state.amps
    for k, pair in enumerate(settings):
        projected = _apply_local(projected, k, pair.projector(choice[k], outcome[k]))

    return _clamp(np.vdot(state.amps, projected).real)


def restrict_to_subspaces(state: PureState, settings) -> PureState:
    """
    Post-select ``state`` on every party landing in its measurement subspace.
    Both observables of a party must share that subspace.
    """
    _check_settings(state, settings)
    if not any(pair.is_restricted for pair in settings):
        return state

    amps = state.amps
    for k, pair in enumerate(settings):
        subspace = pair.subspace_projector("a")
        if not np.allclose(subspace, pair.subspace_projector("b"), atol=UNITARY_TOL):
            raise DimensionMismatchError(f"Observables a and b of party {k + 1} span different measurement subspaces")
        amps = _apply_local(amps, k, subspace)

    weight = np.linalg.norm(amps) ** 2
    if weight < ZERO_NORM:
        raise ZeroStateError("State has no weight in the measurement subspaces")
    logging.debug(f"Post-selected on measurement subspaces with weight {weight:.6g}")
    return PureState.from_array(amps)


def correlation_table(state: PureState, settings) -> CorrelationTable:
    """Correlations of the state post-selected on the measurement subspaces."""
    state = restrict_to_subspaces(state, settings)
    n = state.n
    p = np.zeros((2,) * (2 * n))

    for choice in product((0, 1), repeat=n):
        for outcome in product((0, 1), repeat=n):
            p[choice + outcome] = joint_probability(state, settings, choice, outcome)

    table = CorrelationTable(n=n, p=p)
    logging.debug(f"Built {n}-party correlation table, normalization error {table.normalization_error():.3e}")
    return table


def check_unitary(matrix, dim: int) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.shape != (dim, dim):
        raise DimensionMismatchError(f"Basis change must be {dim}x{dim}, got {matrix.shape}")
    if np.max(np.abs(matrix.conj().T @ matrix - np.eye(dim))) > UNITARY_TOL:
        raise NotUnitaryError()
    return matrix


def local_basis_change(state: PureState, unitaries) -> PureState:
    """Apply U1 (x) ... (x) Un to the amplitudes."""
    if len(unitaries) != state.n:
        raise DimensionMismatchError(f"Expected {state.n} unitaries, got {len(unitaries)}")

    amps = state.amps
    for k, unitary in enumerate(unitaries):
        amps = _apply_local(amps, k, check_unitary(unitary, state.dims[k]))

    return PureState.from_array(amps)


def reduced_rank(state: PureState, party: int, tol: float = RANK_TOL) -> int:
    """Numerical rank of the single-party reduced density operator."""
    matrix = np.moveaxis(state.amps, party, 0).reshape(state.dims[party], -1)
    singular = np.linalg.svd(matrix, compute_uv=False)
    return int(np.sum(singular ** 2 > tol))


def is_fully_entangled(state: PureState, tol: float = RANK_TOL) -> bool:
    return all(reduced_rank(state, k, tol) >= 2 for k in range(state.n))
