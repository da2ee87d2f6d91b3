"""Linear programs over the reduced polytope: robustness, membership, witness.

The reduced robustness minimizes the 1-norm of an affine pseudo-mixture
of polytope vertices reproducing the observed expectations.  The LP is
solved with the positive/negative split x = p - q, which keeps the
problem dense, deterministic and well conditioned (vertex coordinates
are all in {-1, 0, 1}).  Above a vertex-count cutoff the same LP is
solved by dual cutting planes (column generation on the primal): the
dual has only m+1 variables, and pricing over all vertices is a single
matrix-vector product, so sweeps over large polytopes stay tractable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from .pauli import MeasurementSet
from .polytope import VertexSet, v_representation

__all__ = [
    "ExpectationVector",
    "RomResult",
    "reduced_rom",
    "membership",
    "witness",
    "sample_complexity",
    "LP_TOLERANCE",
    "DECISION_TOLERANCE",
]

LP_TOLERANCE = 1e-9
DECISION_TOLERANCE = 1e-7
INPUT_TOLERANCE = 1e-6
COLUMN_GENERATION_CUTOFF = 20000  # vertices; above this the dense LP thrashes


@dataclass(frozen=True)
class ExpectationVector:
    values: Tuple[float, ...]

    def __post_init__(self):
        for v in self.values:
            if abs(v) > 1.0 + INPUT_TOLERANCE:
                raise ValueError(f"expectation {v} outside [-1, 1]")

    @classmethod
    def of(cls, values: Sequence[float]) -> "ExpectationVector":
        return cls(tuple(float(v) for v in values))

    @property
    def m(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class RomResult:
    rom: float
    coefficients: np.ndarray
    negativity: float
    member: bool
    status: str

    def to_json_dict(self) -> dict:
        return {
            "rom": self.rom,
            "member": self.member,
            "status": self.status,
            "negativity": self.negativity,
        }


def _vertex_matrix(vset: VertexSet) -> np.ndarray:
    """Float copy of the vertex rows, cached on the (frozen) vertex set."""
    cached = getattr(vset, "_vmat", None)
    if cached is None:
        cached = np.asarray(vset.as_rows(), dtype=float)  # N x m
        object.__setattr__(vset, "_vmat", cached)
    return cached


def _solve_l1_dense(vmat: np.ndarray, b_eq: np.ndarray):
    """Full p - q split LP; returns (fun, coefficients, status)."""
    n_vert, m = vmat.shape
    a_eq = np.empty((m + 1, 2 * n_vert))
    a_eq[:m, :n_vert] = vmat.T
    a_eq[:m, n_vert:] = -vmat.T
    a_eq[m, :n_vert] = 1.0
    a_eq[m, n_vert:] = -1.0
    cost = np.ones(2 * n_vert)
    res = linprog(
        cost,
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=(0, None),
        method="highs",
        options={"primal_feasibility_tolerance": LP_TOLERANCE},
    )
    if res.status != 0:
        return math.nan, None, res.status
    return float(res.fun), res.x[:n_vert] - res.x[n_vert:], 0


def _solve_l1_column_generation(vmat: np.ndarray, b_eq: np.ndarray):
    """Dual cutting-plane solve of the same 1-norm LP.

    The dual is max b_eq . y subject to |v_j . y[:m] + y[m]| <= 1 for
    every vertex j.  Constraints are activated lazily: solve over the
    active rows, price all vertices with one matvec, add the worst
    violators, repeat.  The primal coefficients come from re-solving the
    split LP restricted to the active columns.
    """
    n_vert, m = vmat.shape
    # Deterministic warm set: vertices most (anti)aligned with the target.
    scores = vmat @ b_eq[:m]
    order = np.argsort(scores, kind="stable")
    seed = 2 * (m + 1)
    active = np.unique(np.concatenate([order[:seed], order[-seed:]]))
    bound = 1e6
    batch = 8 * (m + 1)
    for _ in range(200):
        block = vmat[active]
        a_ub = np.empty((2 * block.shape[0], m + 1))
        a_ub[: block.shape[0], :m] = block
        a_ub[: block.shape[0], m] = 1.0
        a_ub[block.shape[0] :] = -a_ub[: block.shape[0]]
        res = linprog(
            -b_eq,
            A_ub=a_ub,
            b_ub=np.ones(2 * block.shape[0]),
            bounds=(-bound, bound),
            method="highs",
            options={"primal_feasibility_tolerance": LP_TOLERANCE},
        )
        if res.status != 0:
            return math.nan, None, res.status
        y = res.x
        slack = vmat @ y[:m] + y[m]
        violation = np.abs(slack) - 1.0
        violated = np.flatnonzero(violation > 1e-9)
        if violated.size == 0:
            if np.max(np.abs(y)) < bound * (1 - 1e-6):
                break
            # Dual ray hit the box: either genuinely unbounded
            # (primal infeasible) or the box was too tight.
            if bound > 1e12:
                return math.inf, None, 2
            bound *= 1e3
            continue
        worst = violated[np.argsort(violation[violated], kind="stable")[::-1][:batch]]
        active = np.unique(np.concatenate([active, worst]))
    else:
        return math.nan, None, 1
    fun, coeffs_active, status = _solve_l1_dense(vmat[active], b_eq)
    if status != 0:
        return math.nan, None, status
    coeffs = np.zeros(n_vert)
    coeffs[active] = coeffs_active
    return fun, coeffs, 0


def reduced_rom(
    vset: VertexSet,
    b: ExpectationVector,
    decision_tolerance: float = DECISION_TOLERANCE,
) -> RomResult:
    """min ||x||_1 s.t. sum_j x_j v_j = b, sum_j x_j = 1."""
    if vset.m != b.m:
        raise ValueError("dimension mismatch between vertex set and expectations")
    vmat = _vertex_matrix(vset)
    n_vert = vmat.shape[0]
    b_eq = np.concatenate([np.asarray(b.values, dtype=float), [1.0]])
    if n_vert > COLUMN_GENERATION_CUTOFF:
        fun, coeffs, status = _solve_l1_column_generation(vmat, b_eq)
    else:
        fun, coeffs, status = _solve_l1_dense(vmat, b_eq)
    if status == 2:
        return RomResult(math.inf, np.zeros(n_vert), math.inf, False, "infeasible")
    if status != 0:
        return RomResult(math.nan, np.zeros(n_vert), math.nan, False, "numerically-degenerate")
    rom = float(fun)
    return RomResult(rom, coeffs, rom, rom <= 1.0 + decision_tolerance, "optimal")


def membership(
    vset: VertexSet,
    b: ExpectationVector,
    decision_tolerance: float = DECISION_TOLERANCE,
) -> bool:
    """True iff b is a convex combination of the vertices.

    Solved as a minimum-deviation LP (smallest sup-norm slack over a
    proper mixture); agrees with reduced_rom <= 1 + tolerance.
    """
    if vset.m != b.m:
        raise ValueError("dimension mismatch between vertex set and expectations")
    vmat = _vertex_matrix(vset)
    n_vert = vmat.shape[0]
    # variables: x (n_vert), t; minimize t s.t. |V^T x - b| <= t, sum x = 1
    cost = np.zeros(n_vert + 1)
    cost[-1] = 1.0
    a_ub = np.zeros((2 * b.m, n_vert + 1))
    a_ub[: b.m, :n_vert] = vmat.T
    a_ub[b.m :, :n_vert] = -vmat.T
    a_ub[:, -1] = -1.0
    b_arr = np.asarray(b.values, dtype=float)
    b_ub = np.concatenate([b_arr, -b_arr])
    a_eq = np.zeros((1, n_vert + 1))
    a_eq[0, :n_vert] = 1.0
    res = linprog(
        cost,
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=a_eq,
        b_eq=[1.0],
        bounds=(0, None),
        method="highs",
        options={"primal_feasibility_tolerance": LP_TOLERANCE},
    )
    if res.status != 0:
        return False
    return float(res.fun) <= decision_tolerance


@dataclass(frozen=True)
class WitnessReport:
    witnessed: bool
    rom: float
    message: str
    vertex_count: int


def witness(measurements: MeasurementSet, b: ExpectationVector) -> WitnessReport:
    """Build the reduced polytope and test b against it.

    A negative verdict only means the statistics are reproducible by
    some stabilizer state on this measurement set; it is not a
    stabilizerness certificate.
    """
    vset = v_representation(measurements)
    result = reduced_rom(vset, b)
    if result.member:
        msg = "consistent with a stabilizer state on the measurement set"
    else:
        msg = "nonstabilizerness witnessed"
    return WitnessReport(not result.member, result.rom, msg, len(vset.vertices))


def sample_complexity(rom: float, delta: float, epsilon: float) -> int:
    """Quasiprobability sampling bound ceil((2/delta^2) rom^2 ln(2/eps))."""
    if rom < 1.0:
        raise ValueError("rom must be >= 1")
    if delta <= 0:
        raise ValueError("delta must be positive")
    if not 0 < epsilon <= 2:
        raise ValueError("epsilon must be in (0, 2]")
    return math.ceil((2.0 / delta**2) * rom**2 * math.log(2.0 / epsilon))
