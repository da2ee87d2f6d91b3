"""Spin-chain Hamiltonians, ground states, and parameter sweeps.

Hamiltonians are kept as weighted Pauli-string term lists; the ground
state comes from a matrix-free Krylov eigensolver (dense fallback at
small sizes).  The sweep driver reuses a single reduced-polytope
V-representation across a parameter grid and reports one record per
grid point.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse.linalg as spla

from .pauli import MeasurementSet, PauliString
from .polytope import VertexSet
from .rom import ExpectationVector, reduced_rom

__all__ = [
    "SpinChainSpec",
    "GroundStateResult",
    "SweepRecord",
    "build_hamiltonian",
    "ground_state",
    "apply_pauli",
    "pauli_expectation",
    "hamiltonian_measurement_set",
    "sweep",
    "EIG_TOLERANCE",
    "DEGENERACY_THRESHOLD",
]

EIG_TOLERANCE = 1e-10
DEGENERACY_THRESHOLD = 1e-8
DENSE_CUTOFF = 10  # build the full matrix up to 2^10 dimensions
MODELS = ("tfim", "annni", "xxz")

TermList = List[Tuple[float, PauliString]]


@dataclass(frozen=True)
class SpinChainSpec:
    model: str
    n: int
    params: Dict[str, float] = field(default_factory=dict)
    boundary: str = "periodic"

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if not 3 <= self.n <= 14:
            raise ValueError("qubit count must be in [3, 14]")
        if self.boundary not in ("periodic", "open"):
            raise ValueError(f"unknown boundary {self.boundary!r}")
        for key, val in self.params.items():
            if not math.isfinite(val):
                raise ValueError(f"coupling {key}={val} is not finite")

    def with_params(self, params: Dict[str, float]) -> "SpinChainSpec":
        return SpinChainSpec(self.model, self.n, dict(params), self.boundary)


@dataclass(frozen=True)
class GroundStateResult:
    energy: float
    state: np.ndarray
    gap_estimate: float
    degenerate_flag: bool


def _zz(n: int, i: int, j: int) -> PauliString:
    return PauliString(n, 0, 0, (1 << i) | (1 << j))


def _single(n: int, i: int, kind: str) -> PauliString:
    if kind == "x":
        return PauliString(n, 0, 1 << i, 0)
    return PauliString(n, 0, 0, 1 << i)


def _two(n: int, i: int, j: int, kind: str) -> PauliString:
    bits = (1 << i) | (1 << j)
    if kind == "xx":
        return PauliString(n, 0, bits, 0)
    if kind == "yy":
        return PauliString(n, 2, bits, bits)
    return PauliString(n, 0, 0, bits)


def _structural_terms(spec: SpinChainSpec) -> TermList:
    """Every term of the model with its weight (weights may be zero)."""
    n = spec.n
    periodic = spec.boundary == "periodic"
    terms: TermList = []
    if spec.model in ("tfim", "annni"):
        k = float(spec.params.get("k", 0.0))
        g = float(spec.params.get("g", 0.0))
        if spec.model == "tfim" and "k" in spec.params:
            raise ValueError("tfim takes no next-nearest coupling; use annni")
        for i in range(n if periodic else n - 1):
            terms.append((-1.0, _zz(n, i, (i + 1) % n)))
        if spec.model == "annni":
            for i in range(n if periodic else n - 2):
                terms.append((k, _zz(n, i, (i + 2) % n)))
        for i in range(n):
            terms.append((-g, _single(n, i, "x")))
    else:  # xxz
        delta = float(spec.params.get("delta", 0.0))
        h = float(spec.params.get("h", 0.0))
        for i in range(n if periodic else n - 1):
            j = (i + 1) % n
            terms.append((0.25, _two(n, i, j, "xx")))
            terms.append((0.25, _two(n, i, j, "yy")))
            terms.append((0.25 * delta, _two(n, i, j, "zz")))
        for i in range(n):
            terms.append((-0.5 * h, _single(n, i, "x")))
    return terms


def build_hamiltonian(spec: SpinChainSpec) -> TermList:
    """Weighted term list; duplicate Paulis merged, zero weights dropped."""
    merged: Dict[Tuple[int, int, int], float] = {}
    order: List[Tuple[int, int, int]] = []
    paulis: Dict[Tuple[int, int, int], PauliString] = {}
    for weight, p in _structural_terms(spec):
        key = (p.phase_k, p.xbits, p.zbits)
        if key not in merged:
            merged[key] = 0.0
            order.append(key)
            paulis[key] = p
        merged[key] += weight
    return [(merged[k], paulis[k]) for k in order if merged[k] != 0.0]


def apply_pauli(p: PauliString, vec: np.ndarray) -> np.ndarray:
    """P @ vec for a state vector of length 2^n."""
    idx = np.arange(vec.size, dtype=np.int64)
    src = idx ^ p.xbits
    signs = 1.0 - 2.0 * (np.bitwise_count(src & np.int64(p.zbits)) & 1)
    return (1j**p.phase_k) * signs * vec[src]


def pauli_expectation(state: np.ndarray, p: PauliString) -> float:
    """<state|P|state> for Hermitian P; clipped to [-1, 1]."""
    if not p.is_hermitian:
        raise ValueError("expectation requires a Hermitian Pauli")
    if state.size != 2**p.n:
        raise ValueError("state length does not match qubit count")
    val = np.vdot(state, apply_pauli(p, state))
    if abs(val.imag) > 1e-10:
        raise ValueError("imaginary residue in Hermitian expectation")
    return float(min(1.0, max(-1.0, val.real)))


def _dense_hamiltonian(terms: TermList, n: int) -> np.ndarray:
    dim = 2**n
    h = np.zeros((dim, dim), dtype=complex)
    cols = np.arange(dim, dtype=np.int64)
    for weight, p in terms:
        rows = cols ^ p.xbits
        signs = 1.0 - 2.0 * (np.bitwise_count(cols & np.int64(p.zbits)) & 1)
        h[rows, cols] += weight * (1j**p.phase_k) * signs
    return h


def ground_state(
    terms: TermList, tol: float = EIG_TOLERANCE, seed: int = 1234
) -> GroundStateResult:
    """Lowest eigenpair and gap estimate of a Pauli-term Hamiltonian."""
    if not terms:
        raise ValueError("empty term list")
    n = terms[0][1].n
    if n > 14:
        raise ValueError("exact diagonalization capped at 14 qubits")
    dim = 2**n
    if n <= DENSE_CUTOFF:
        h = _dense_hamiltonian(terms, n)
        evals, evecs = np.linalg.eigh(h)
        e0, e1 = float(evals[0]), float(evals[1])
        state = evecs[:, 0]
    else:
        def matvec(v):
            out = np.zeros(dim, dtype=complex)
            for weight, p in terms:
                out += weight * apply_pauli(p, v)
            return out

        op = spla.LinearOperator((dim, dim), matvec=matvec, dtype=complex)
        rng = np.random.default_rng(seed)
        v0 = rng.normal(size=dim)
        evals, evecs = spla.eigsh(op, k=2, which="SA", tol=tol, v0=v0, maxiter=5000)
        order = np.argsort(evals)
        e0, e1 = float(evals[order[0]]), float(evals[order[1]])
        state = evecs[:, order[0]]
    state = state / np.linalg.norm(state)
    gap = max(0.0, e1 - e0)
    return GroundStateResult(e0, state, gap, gap < DEGENERACY_THRESHOLD)


def hamiltonian_measurement_set(spec: SpinChainSpec, scope: str = "all-terms") -> MeasurementSet:
    """Measurements matching the Hamiltonian's term structure.

    "first-cell" keeps one representative per term type on the lowest
    indices; "all-terms" keeps every distinct Pauli in the term list.
    Signs are stripped (weights live in the Hamiltonian).
    """
    n = spec.n
    if scope == "first-cell":
        if spec.model == "tfim":
            paulis = [_zz(n, 0, 1), _single(n, 0, "x")]
        elif spec.model == "annni":
            paulis = [_zz(n, 0, 1), _zz(n, 0, 2), _single(n, 0, "x")]
        else:
            paulis = [
                _two(n, 0, 1, "xx"),
                _two(n, 0, 1, "yy"),
                _two(n, 0, 1, "zz"),
                _single(n, 0, "x"),
            ]
        return MeasurementSet(tuple(paulis))
    if scope != "all-terms":
        raise ValueError(f"unknown scope {scope!r}")
    seen = set()
    paulis = []
    for _, p in _structural_terms(spec):
        stripped = PauliString(p.n, (p.xbits & p.zbits).bit_count() % 4, p.xbits, p.zbits)
        key = (stripped.xbits, stripped.zbits)
        if key not in seen:
            seen.add(key)
            paulis.append(stripped)
    return MeasurementSet(tuple(paulis))


@dataclass(frozen=True)
class SweepRecord:
    params: Dict[str, float]
    energy: Optional[float]
    gap_estimate: Optional[float]
    expectations: Optional[Tuple[float, ...]]
    rom: Optional[float]
    degenerate_flag: Optional[bool]
    solver_status: str


def sweep(
    spec: SpinChainSpec,
    grid: Sequence[Dict[str, float]],
    measurements: MeasurementSet,
    vset: VertexSet,
    threads: int = 1,
) -> List[SweepRecord]:
    """One record per grid point; eigensolver failures are recorded, not raised."""

    def run(point: Dict[str, float]) -> SweepRecord:
        try:
            terms = build_hamiltonian(spec.with_params(point))
            gs = ground_state(terms)
            expectations = tuple(pauli_expectation(gs.state, p) for p in measurements)
            result = reduced_rom(vset, ExpectationVector.of(expectations))
            return SweepRecord(
                dict(point),
                gs.energy,
                gs.gap_estimate,
                expectations,
                result.rom,
                gs.degenerate_flag,
                result.status,
            )
        except Exception as exc:  # per-point failures must not kill the sweep
            return SweepRecord(dict(point), None, None, None, None, None, f"error: {exc}")

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run, grid))
    return [run(point) for point in grid]
