"""
End-to-end Hardy test of a tripartite pure state: magic basis, reduction to
three qubits when needed, canonical form, construction, evaluation and the
bi-local LP check.
"""
import logging
from dataclasses import dataclass, replace
from typing import Optional

from tripartite_hardy.services.hardy3 import HardySettings, construct_test, evaluate_conditions
from tripartite_hardy.services.hardy3_sym import SymmetricCanon, construct_symmetric_test, evaluate_chenq_conditions
from tripartite_hardy.services.hardy_n import ConditionReport
from tripartite_hardy.services.magic_basis import (
    CanonicalForm,
    MagicBasisTransform,
    StateClass,
    StateTag,
    canonical_form_3qubit,
    classify,
    find_magic_basis,
)
from tripartite_hardy.services.ns_bilocal import BilocalCertificate, check_bilocal
from tripartite_hardy.services.qudit_reduce import SubspaceRecord, reduce_to_3qubit
from tripartite_hardy.services.tensor_core import PureState, correlation_table, is_fully_entangled
from tripartite_hardy.utils.errors import (
    ConstructionFailedError,
    DimensionMismatchError,
    InternalConsistencyError,
    NotFullyEntangledError,
)

NO_CONVERGENCE_FLAG = "NoConvergence"


@dataclass(frozen=True, eq=False)
class CanonicalOutcome:
    canon: CanonicalForm
    state_class: StateClass
    magic_state: PureState
    transform: MagicBasisTransform
    record: Optional[SubspaceRecord]
    reduced_state: Optional[PureState]
    closest_overlap: complex
    converged: bool = True


@dataclass(frozen=True, eq=False)
class HardyTestOutcome:
    canonical: CanonicalOutcome
    settings: HardySettings
    report: ConditionReport
    certificate: BilocalCertificate
    symmetric_test: bool


def canonical_pipeline(state: PureState, restarts: int = 24, seed: int = 0) -> CanonicalOutcome:
    if state.n != 3:
        raise DimensionMismatchError(f"A tripartite state is required, got {state.n} parties")
    if not is_fully_entangled(state):
        raise NotFullyEntangledError()

    magic_state, transform, ansatz = find_magic_basis(state, restarts=restarts, seed=seed)

    record, reduced = None, None
    if magic_state.dims == (2, 2, 2):
        canon = canonical_form_3qubit(magic_state, transform, closest_overlap=ansatz.overlap_h)
    else:
        reduced, record = reduce_to_3qubit(magic_state, seed=seed)
        canon = canonical_form_3qubit(reduced, closest_overlap=ansatz.overlap_h)

    state_class = classify(canon)
    logging.info(f"State classified as {state_class}")
    return CanonicalOutcome(
        canon=canon,
        state_class=state_class,
        magic_state=magic_state,
        transform=transform,
        record=record,
        reduced_state=reduced,
        closest_overlap=ansatz.overlap_h,
        converged=ansatz.converged,
    )


def lift_settings(settings: HardySettings, outcome: CanonicalOutcome) -> HardySettings:
    """
    Embed reduced-qubit settings into the qudit spaces and undo the magic
    basis. Both outcome rays are lifted, so each observable measures within
    the retained two-dimensional subspace.
    """
    if outcome.record is None:
        return settings

    def lift(setting, ray_outcome):
        return [
            outcome.transform.pull_back(k, outcome.record.embed(k, pair.outcome_ray(setting, ray_outcome)))
            for k, pair in enumerate(settings)
        ]

    return HardySettings.from_rays(
        lift("a", 0),
        lift("b", 0),
        dict(settings.provenance),
        a1_rays=lift("a", 1),
        b1_rays=lift("b", 1),
    )


def _construct(canon: CanonicalForm, state_class: StateClass, tol_zero, tol_pos, seed):
    if state_class.tag is StateTag.SYMMETRIC_FAILING:
        settings, report = construct_symmetric_test(SymmetricCanon.from_canonical(canon), tol_zero, tol_pos, seed)
        return settings, report, True

    try:
        settings, report = construct_test(canon, tol_zero=tol_zero, tol_pos=tol_pos, seed=seed)
        return settings, report, False
    except ConstructionFailedError:
        if state_class.tag is not StateTag.SYMMETRIC_PASSING:
            raise
        logging.warning("Asymmetric construction failed on a symmetric state; using the symmetric test")
        settings, report = construct_symmetric_test(SymmetricCanon.from_canonical(canon), tol_zero, tol_pos, seed)
        return settings, report, True


def run_hardy_test(
    state: PureState,
    tol_zero: float = 1e-9,
    tol_pos: float = 1e-12,
    lp_tol: float = 1e-7,
    restarts: int = 24,
    seed: int = 0,
) -> HardyTestOutcome:
    outcome = canonical_pipeline(state, restarts=restarts, seed=seed)
    constructed_settings, constructed, symmetric = _construct(
        outcome.canon, outcome.state_class, tol_zero, tol_pos, seed
    )

    # qudit settings measure inside the retained subspaces of the input state
    settings = lift_settings(constructed_settings, outcome)
    evaluate = evaluate_chenq_conditions if symmetric else evaluate_conditions
    report = evaluate(state, settings, tol_zero, tol_pos)

    flags = tuple(constructed.flags)
    if not outcome.converged:
        flags += (NO_CONVERGENCE_FLAG,)
    if flags:
        report = replace(report, flags=flags)

    if not report.passed:
        raise InternalConsistencyError(
            verboseMessage=f"constructed settings fail on the input basis: P(aaa)={report.p_pos!r}, "
            f"max zero {report.max_zero!r}"
        )

    certificate = check_bilocal(correlation_table(state, settings), lp_tol)
    if certificate.feasible:
        raise InternalConsistencyError(verboseMessage="passing Hardy test on a bi-local correlation table")

    return HardyTestOutcome(
        canonical=outcome,
        settings=settings,
        report=report,
        certificate=certificate,
        symmetric_test=symmetric,
    )
