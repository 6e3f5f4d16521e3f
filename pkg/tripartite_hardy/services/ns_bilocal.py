"""
Membership of three-party correlation tables in the bi-local polytope: convex
mixtures, over the partitions {1|23}, {2|13} and {3|12}, of a deterministic
single-party box times an extremal non-signaling two-party box.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional

import numpy as np

from tripartite_hardy.services.lp_simplex import lp_feasibility
from tripartite_hardy.services.tensor_core import CorrelationTable
from tripartite_hardy.utils.errors import DimensionMismatchError

# (single party, pair) for each partition, in vertex order
PARTITIONS = ((0, (1, 2)), (1, (0, 2)), (2, (0, 1)))
PARTITION_LABELS = ("1|23", "2|13", "3|12")
SETTING_LETTERS = "abc"
OUTCOME_LETTERS = "xyz"


class BoxKind(Enum):
    LOCAL_DETERMINISTIC = "LocalDeterministic"
    PR_BOX = "PRBox"


class Verdict(Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"


@dataclass(frozen=True)
class SinglePartyVertex:
    """Deterministic box: setting a gives outcomes[0], setting b gives outcomes[1]."""
    outcomes: tuple

    def table(self) -> np.ndarray:
        q = np.zeros((2, 2))
        for setting, outcome in enumerate(self.outcomes):
            q[setting, outcome] = 1.0
        return q


@dataclass(frozen=True, eq=False)
class BipartiteNSVertex:
    """r[s_i, s_j, o_i, o_j]; ``params`` are (alpha, beta, gamma, delta) or (alpha, beta, gamma)."""
    kind: BoxKind
    params: tuple
    table: np.ndarray


@dataclass(frozen=True, eq=False)
class ProductVertex:
    partition: int
    single: SinglePartyVertex
    pair: BipartiteNSVertex
    table: CorrelationTable


@dataclass(frozen=True, eq=False)
class BilocalCertificate:
    verdict: Verdict
    weights: Optional[np.ndarray]
    margin: float
    reconstruction_error: Optional[float] = None
    pivots: int = 0

    @property
    def feasible(self) -> bool:
        return self.verdict is Verdict.FEASIBLE


def local_deterministic_boxes() -> list:
    boxes = []
    for alpha, beta, gamma, delta in np.ndindex(2, 2, 2, 2):
        r = np.zeros((2, 2, 2, 2))
        for x, y in np.ndindex(2, 2):
            r[x, y, (alpha * x) ^ beta, (gamma * y) ^ delta] = 1.0
        boxes.append(BipartiteNSVertex(BoxKind.LOCAL_DETERMINISTIC, (alpha, beta, gamma, delta), r))
    return boxes


def pr_boxes() -> list:
    """o_i + o_j = x*y + alpha*x + beta*y + gamma (mod 2), each allowed pair with weight 1/2."""
    boxes = []
    for alpha, beta, gamma in np.ndindex(2, 2, 2):
        r = np.zeros((2, 2, 2, 2))
        for x, y, a in np.ndindex(2, 2, 2):
            b = a ^ (x * y) ^ (alpha * x) ^ (beta * y) ^ gamma
            r[x, y, a, b] = 0.5
        boxes.append(BipartiteNSVertex(BoxKind.PR_BOX, (alpha, beta, gamma), r))
    return boxes


def single_party_boxes() -> list:
    return [SinglePartyVertex((int(a), int(b))) for a, b in np.ndindex(2, 2)]


def _product_table(single: int, pair: tuple, q: np.ndarray, r: np.ndarray) -> np.ndarray:
    i, j = pair
    subscripts = (
        f"{SETTING_LETTERS[single]}{OUTCOME_LETTERS[single]},"
        f"{SETTING_LETTERS[i]}{SETTING_LETTERS[j]}{OUTCOME_LETTERS[i]}{OUTCOME_LETTERS[j]}"
        f"->{SETTING_LETTERS}{OUTCOME_LETTERS}"
    )
    return np.einsum(subscripts, q, r)


@lru_cache(maxsize=1)
def enumerate_vertices() -> tuple:
    """288 product vertices: partition-major, then single-party box, then two-party box."""
    pairs = local_deterministic_boxes() + pr_boxes()
    vertices = []
    for index, (single, pair) in enumerate(PARTITIONS):
        for box in single_party_boxes():
            for two_party in pairs:
                table = CorrelationTable(n=3, p=_product_table(single, pair, box.table(), two_party.table))
                vertices.append(ProductVertex(index, box, two_party, table))
    return tuple(vertices)


@lru_cache(maxsize=1)
def vertex_matrix() -> np.ndarray:
    """64 x 288 matrix whose columns are the flattened vertex tables."""
    return np.column_stack([vertex.table.flat() for vertex in enumerate_vertices()])


def check_bilocal(table: CorrelationTable, tol: float = 1e-7) -> BilocalCertificate:
    if table.n != 3:
        raise DimensionMismatchError(f"Bi-local models are defined for 3 parties, got {table.n}")
    table.validate(tol=max(tol, 1e-10))

    V = vertex_matrix()
    A_eq = np.vstack([V, np.ones((1, V.shape[1]))])
    b_eq = np.concatenate([table.flat(), [1.0]])
    result = lp_feasibility(A_eq, b_eq, tol=tol)

    if not result.feasible:
        logging.info(f"Table is not bi-local: phase 1 optimum {result.margin:.3e}")
        return BilocalCertificate(Verdict.INFEASIBLE, None, result.margin, pivots=result.pivots)

    weights = result.x
    error = float(np.max(np.abs(V @ weights - table.flat())))
    logging.info(f"Table is bi-local, reconstruction error {error:.3e}")
    return BilocalCertificate(Verdict.FEASIBLE, weights, result.margin, error, result.pivots)


def uniform_table() -> CorrelationTable:
    return CorrelationTable(n=3, p=np.full((2,) * 6, 1 / 8))


def noise_threshold(table: CorrelationTable, tol: float = 1e-7, iterations: int = 30) -> float:
    """
    Smallest white-noise weight w (to bisection accuracy) making
    (1 - w) * table + w * uniform bi-local.
    """
    noise = uniform_table()
    if check_bilocal(table, tol).feasible:
        return 0.0

    low, high = 0.0, 1.0
    for _ in range(iterations):
        mid = (low + high) / 2
        if check_bilocal(table.mixed_with(noise, mid), tol).feasible:
            high = mid
        else:
            low = mid

    logging.info(f"Noise threshold in [{low:.6g}, {high:.6g}]")
    return high
