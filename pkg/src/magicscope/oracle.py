"""Brute-force ground truth at small qubit counts.

Enumerates every maximal-rank stabilizer group (n <= 4), evaluates
Pauli expectations group-theoretically, projects all pure stabilizer
states onto a measurement set, and computes the full robustness LP over
the complete stabilizer polytope.  Everything here is test support: the
costs are exponential and deliberately unoptimized beyond feasibility.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
from scipy.optimize import linprog

from .pauli import MeasurementSet, PauliString, identity, multiply
from .rom import LP_TOLERANCE

__all__ = [
    "StabilizerGroup",
    "enumerate_stabilizer_groups",
    "stabilizer_group_count",
    "stabilizer_expectation",
    "topdown_vertices",
    "full_rom",
    "hull_equal",
    "hull_contains",
    "pauli_basis",
    "full_pauli_table",
    "random_pure_state",
    "CliffordCircuit",
    "random_clifford",
    "ORACLE_MAX_QUBITS",
]

ORACLE_MAX_QUBITS = 4
HULL_TOLERANCE = 1e-7


@dataclass(frozen=True)
class StabilizerGroup:
    n: int
    generators: Tuple[PauliString, ...]
    elements: Tuple[PauliString, ...]

    @functools.cached_property
    def _lookup(self) -> Dict[Tuple[int, int], int]:
        return {(p.xbits, p.zbits): p.phase_k for p in self.elements}

    def contains(self, p: PauliString) -> bool:
        return self._lookup.get((p.xbits, p.zbits)) == p.phase_k


def _symplectic_product(e1: int, e2: int, n: int) -> int:
    mask = (1 << n) - 1
    x1, z1 = e1 >> n, e1 & mask
    x2, z2 = e2 >> n, e2 & mask
    return ((x1 & z2).bit_count() + (x2 & z1).bit_count()) % 2


def _isotropic_subspaces(n: int) -> List[Tuple[int, ...]]:
    """Canonical generator tuples of all maximal isotropic subspaces."""
    results: List[Tuple[int, ...]] = []
    seen: Set[frozenset] = set()

    def extend(gens: List[int], span: Set[int]) -> None:
        if len(gens) == n:
            fingerprint = frozenset(span)
            if fingerprint not in seen:
                seen.add(fingerprint)
                results.append(tuple(gens))
            return
        start = gens[-1] + 1 if gens else 1
        for e in range(start, 1 << (2 * n)):
            if e in span:
                continue
            if any(_symplectic_product(e, g, n) for g in gens):
                continue
            # only the greedy-minimal basis survives: e must be the
            # smallest of the elements it newly adds to the span
            if any((e ^ s) < e for s in span if s):
                continue
            extend(gens + [e], span | {e ^ s for s in span})

    extend([], {0})
    return results


def _pauli_from_encoding(e: int, n: int, negate: bool) -> PauliString:
    mask = (1 << n) - 1
    x, z = e >> n, e & mask
    k = ((x & z).bit_count() + (2 if negate else 0)) % 4
    return PauliString(n, k, x, z)


@functools.lru_cache(maxsize=None)
def enumerate_stabilizer_groups(n: int) -> Tuple[StabilizerGroup, ...]:
    """All 2^n prod_k (2^k + 1) maximal stabilizer groups, deduplicated."""
    if not 1 <= n <= ORACLE_MAX_QUBITS:
        raise ValueError(f"oracle enumeration capped at n <= {ORACLE_MAX_QUBITS}")
    groups: List[StabilizerGroup] = []
    for gens_enc in _isotropic_subspaces(n):
        for sign_bits in range(1 << n):
            gens = tuple(
                _pauli_from_encoding(e, n, bool((sign_bits >> i) & 1))
                for i, e in enumerate(gens_enc)
            )
            elements = []
            for subset in range(1 << n):
                prod = identity(n)
                for i in range(n):
                    if (subset >> i) & 1:
                        prod = multiply(prod, gens[i])
                elements.append(prod)
            groups.append(StabilizerGroup(n, gens, tuple(elements)))
    return tuple(groups)


def stabilizer_group_count(n: int) -> int:
    count = 2**n
    for k in range(1, n + 1):
        count *= 2**k + 1
    return count


def stabilizer_expectation(group: StabilizerGroup, p: PauliString) -> int:
    """<P> on the stabilizer state: 1[P in S] - 1[-P in S]."""
    if p.n != group.n:
        raise ValueError("qubit counts differ")
    stored = group._lookup.get((p.xbits, p.zbits))
    if stored is None:
        return 0
    return 1 if stored == p.phase_k else -1


def topdown_vertices(
    measurements: MeasurementSet, max_n: int = 3
) -> Set[Tuple[int, ...]]:
    """Project every pure stabilizer state onto the measurement set."""
    n = measurements.n
    if n > max_n:
        raise ValueError(f"top-down projection capped at n <= {max_n}")
    vectors = set()
    for group in enumerate_stabilizer_groups(n):
        vectors.add(tuple(stabilizer_expectation(group, p) for p in measurements))
    return vectors


@functools.lru_cache(maxsize=None)
def pauli_basis(n: int) -> Tuple[PauliString, ...]:
    """Canonical Hermitian representatives of all 4^n unsigned Paulis.

    Ordered by (xbits, zbits) lexicographically; index 0 is the identity.
    """
    basis = []
    for x in range(1 << n):
        for z in range(1 << n):
            basis.append(PauliString(n, (x & z).bit_count() % 4, x, z))
    return tuple(basis)


def _apply_pauli_dense(p: PauliString, vec: np.ndarray) -> np.ndarray:
    idx = np.arange(vec.size, dtype=np.int64)
    src = idx ^ p.xbits
    signs = 1.0 - 2.0 * (np.bitwise_count(src & np.int64(p.zbits)) & 1)
    return (1j**p.phase_k) * signs * vec[src]


def full_pauli_table(state: np.ndarray) -> np.ndarray:
    """All 4^n Pauli expectations of a pure state, canonical order."""
    n = int(math.log2(state.size))
    if 2**n != state.size:
        raise ValueError("state length is not a power of two")
    table = np.empty(4**n)
    for i, p in enumerate(pauli_basis(n)):
        val = np.vdot(state, _apply_pauli_dense(p, state))
        if abs(val.imag) > 1e-10:
            raise ValueError("non-real expectation; state not normalized?")
        table[i] = val.real
    return table


@functools.lru_cache(maxsize=None)
def _full_lp_matrix(n: int) -> np.ndarray:
    groups = enumerate_stabilizer_groups(n)
    basis = pauli_basis(n)
    a = np.empty((len(basis), len(groups)))
    for j, group in enumerate(groups):
        for i, p in enumerate(basis):
            a[i, j] = stabilizer_expectation(group, p)
    return a


def full_rom(pauli_table: Sequence[float], n: int) -> float:
    """Robustness over the complete stabilizer polytope (Eq.-4-style LP)."""
    if n > 3:
        raise ValueError("full robustness oracle capped at n <= 3")
    b = np.asarray(pauli_table, dtype=float)
    if b.size != 4**n:
        raise ValueError("expectation table must have length 4^n")
    a = _full_lp_matrix(n)
    n_groups = a.shape[1]
    a_eq = np.hstack([a, -a])
    cost = np.ones(2 * n_groups)
    res = linprog(
        cost,
        A_eq=a_eq,
        b_eq=b,
        bounds=(0, None),
        method="highs",
        options={"primal_feasibility_tolerance": LP_TOLERANCE},
    )
    if res.status == 2:
        raise ValueError("expectation table is not consistent with any state")
    if res.status != 0:
        raise RuntimeError(f"full robustness LP failed with status {res.status}")
    return float(res.fun)


def hull_contains(
    points: Iterable[Sequence[float]],
    hull_points: Sequence[Sequence[float]],
    tolerance: float = HULL_TOLERANCE,
) -> bool:
    """Every point expressible as a convex combination of hull_points."""
    hull = np.asarray(list(hull_points), dtype=float)
    n_vert, dim = hull.shape
    cost = np.zeros(n_vert + 1)
    cost[-1] = 1.0
    a_eq = np.zeros((1, n_vert + 1))
    a_eq[0, :n_vert] = 1.0
    for point in points:
        b = np.asarray(point, dtype=float)
        a_ub = np.zeros((2 * dim, n_vert + 1))
        a_ub[:dim, :n_vert] = hull.T
        a_ub[dim:, :n_vert] = -hull.T
        a_ub[:, -1] = -1.0
        res = linprog(
            cost,
            A_ub=a_ub,
            b_ub=np.concatenate([b, -b]),
            A_eq=a_eq,
            b_eq=[1.0],
            bounds=(0, None),
            method="highs",
        )
        if res.status != 0 or float(res.fun) > tolerance:
            return False
    return True


def hull_equal(
    a: Iterable[Sequence[float]],
    b: Iterable[Sequence[float]],
    tolerance: float = HULL_TOLERANCE,
) -> bool:
    a = [tuple(p) for p in a]
    b = [tuple(p) for p in b]
    return hull_contains(a, b, tolerance) and hull_contains(b, a, tolerance)


def measurement_expectations(
    pauli_table: Sequence[float], measurements: MeasurementSet
) -> List[float]:
    """Slice a full canonical-order table down to a measurement set."""
    n = measurements.n
    table = np.asarray(pauli_table, dtype=float)
    out = []
    for p in measurements:
        canonical_k = (p.xbits & p.zbits).bit_count() % 4
        sign = 1.0 if p.phase_k == canonical_k else -1.0
        out.append(sign * float(table[(p.xbits << n) | p.zbits]))
    return out


def random_pure_state(n: int, rng: np.random.Generator) -> np.ndarray:
    vec = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return vec / np.linalg.norm(vec)


# --- Clifford conjugation (symplectic update rules per gate) ---------------

_HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_PHASE = np.array([[1, 0], [0, 1j]], dtype=complex)


@dataclass(frozen=True)
class CliffordCircuit:
    """A word in {H, S, CNOT}, applied left to right."""

    n: int
    gates: Tuple[Tuple, ...]  # ("h", q) | ("s", q) | ("cx", c, t)

    def conjugate(self, p: PauliString) -> PauliString:
        """C P C-dagger, staying in the symplectic representation."""
        if p.n != self.n:
            raise ValueError("qubit counts differ")
        k, x, z = p.phase_k, p.xbits, p.zbits
        for gate in self.gates:
            if gate[0] == "h":
                q = 1 << gate[1]
                if x & z & q:
                    k = (k + 2) % 4
                xq, zq = x & q, z & q
                x, z = (x & ~q) | zq, (z & ~q) | xq
            elif gate[0] == "s":
                q = 1 << gate[1]
                if x & q:
                    k = (k + 1) % 4
                    z ^= q
            else:
                c, t = 1 << gate[1], 1 << gate[2]
                if x & c:
                    x ^= t
                if z & t:
                    z ^= c
        return PauliString(self.n, k, x, z)

    def conjugate_set(self, measurements: MeasurementSet) -> MeasurementSet:
        return MeasurementSet(tuple(self.conjugate(p) for p in measurements))

    def inverse(self) -> "CliffordCircuit":
        inv: List[Tuple] = []
        for gate in reversed(self.gates):
            if gate[0] == "s":
                # S^-1 = S S S
                inv.extend([gate, gate, gate])
            else:
                inv.append(gate)
        return CliffordCircuit(self.n, tuple(inv))

    def unitary(self) -> np.ndarray:
        dim = 2**self.n
        u = np.eye(dim, dtype=complex)
        for gate in self.gates:
            u = self._gate_matrix(gate) @ u
        return u

    def apply(self, state: np.ndarray) -> np.ndarray:
        return self.unitary() @ state

    def _gate_matrix(self, gate: Tuple) -> np.ndarray:
        dim = 2**self.n
        if gate[0] in ("h", "s"):
            q = gate[1]
            single = _HADAMARD if gate[0] == "h" else _PHASE
            mats = [np.eye(2, dtype=complex)] * self.n
            mats[q] = single
            # qubit 0 is the least-significant bit of the basis index
            full = mats[-1]
            for m in reversed(mats[:-1]):
                full = np.kron(full, m)
            return full
        c, t = gate[1], gate[2]
        u = np.zeros((dim, dim), dtype=complex)
        for basis in range(dim):
            target = basis ^ (1 << t) if (basis >> c) & 1 else basis
            u[target, basis] = 1.0
        return u


def random_clifford(n: int, rng: np.random.Generator, length: Optional[int] = None) -> CliffordCircuit:
    if length is None:
        length = 4 * n + 4
    gates: List[Tuple] = []
    for _ in range(length):
        kind = rng.integers(0, 3 if n > 1 else 2)
        if kind == 0:
            gates.append(("h", int(rng.integers(0, n))))
        elif kind == 1:
            gates.append(("s", int(rng.integers(0, n))))
        else:
            c = int(rng.integers(0, n))
            t = int(rng.integers(0, n - 1))
            if t >= c:
                t += 1
            gates.append(("cx", c, t))
    return CliffordCircuit(n, tuple(gates))
