"""V-representation of the reduced stabilizer polytope.

Each maximal commuting subset S of the measurement set, together with
an admissible sign assignment f (no signed subset product equal to -1),
contributes one vertex with entries f on S and 0 elsewhere.  Admissible
assignments are found by a GF(2) coset solve: the kernel of the
symplectic column matrix of S encodes the subset products proportional
to the identity, and the sign vector of those products pins the parity
constraints on f.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import gf2
from .fgraph import build_frustration_graph, enumerate_maximal_independent_sets
from .pauli import MeasurementSet, commutes, format_pauli, identity, identity_sign, multiply

__all__ = [
    "SignedContext",
    "Vertex",
    "VertexSet",
    "admissible_signs",
    "vertex",
    "v_representation",
    "size_bound",
]


@dataclass(frozen=True)
class SignedContext:
    set_indices: Tuple[int, ...]
    signs: Tuple[int, ...]  # aligned with set_indices, entries +-1


@dataclass(frozen=True)
class Vertex:
    coords: Tuple[int, ...]


@dataclass(frozen=True)
class VertexSet:
    m: int
    vertices: Tuple[Vertex, ...]
    provenance: Tuple[SignedContext, ...]
    measurements: Optional[MeasurementSet] = None

    def as_rows(self) -> List[List[int]]:
        return [list(v.coords) for v in self.vertices]

    def to_json(self) -> str:
        payload = {
            "m": self.m,
            "measurements": [format_pauli(p) for p in self.measurements]
            if self.measurements is not None
            else None,
            "vertices": self.as_rows(),
            "contexts": [
                {"set": list(ctx.set_indices), "signs": list(ctx.signs)}
                for ctx in self.provenance
            ],
        }
        return json.dumps(payload, indent=1)

    def to_txt(self) -> str:
        return "\n".join(" ".join(str(c) for c in v.coords) for v in self.vertices) + "\n"


def _symplectic_column_matrix(measurements: MeasurementSet, subset: Sequence[int]) -> gf2.F2Matrix:
    n = measurements.n
    rows = []
    for i in range(n):
        row = 0
        for j, idx in enumerate(subset):
            row |= ((measurements[idx].xbits >> i) & 1) << j
        rows.append(row)
    for i in range(n):
        row = 0
        for j, idx in enumerate(subset):
            row |= ((measurements[idx].zbits >> i) & 1) << j
        rows.append(row)
    return gf2.F2Matrix(tuple(rows), len(subset))


def admissible_signs(
    measurements: MeasurementSet, subset: Sequence[int]
) -> List[Tuple[int, ...]]:
    """All sign assignments over the commuting subset with no -1 product.

    Returns tuples of +-1 aligned with ``subset`` (ascending index
    order), sorted so that repeated runs emit identical lists.  The
    empty list signals an inconsistent context (e.g. both P and -P
    forced positive through a product relation).
    """
    subset = tuple(sorted(subset))
    for a in range(len(subset)):
        for b in range(a):
            if not commutes(measurements[subset[a]], measurements[subset[b]]):
                raise ValueError("subset contains an anticommuting pair")
    m_s = _symplectic_column_matrix(measurements, subset)
    kernel = gf2.kernel_basis(m_s)
    sigma = 0
    for i, c in enumerate(kernel.rows):
        prod = identity(measurements.n)
        for j in range(len(subset)):
            if (c >> j) & 1:
                prod = multiply(prod, measurements[subset[j]])
        sign = identity_sign(prod)
        assert sign is not None, "kernel row product must be proportional to identity"
        if sign == -1:
            sigma |= 1 << i
    particular = gf2.solve(kernel, sigma)
    if particular is None:
        return []
    coset_basis = gf2.kernel_basis(kernel).rows
    xs = {particular}
    for vec in coset_basis:
        xs |= {x ^ vec for x in xs}
    assignments = sorted(
        tuple(-1 if (x >> j) & 1 else 1 for j in range(len(subset))) for x in xs
    )
    return assignments


def vertex(measurements: MeasurementSet, ctx: SignedContext) -> Vertex:
    coords = [0] * len(measurements)
    for idx, sign in zip(ctx.set_indices, ctx.signs):
        coords[idx] = sign
    return Vertex(tuple(coords))


def v_representation(measurements: MeasurementSet, verbose: bool = False) -> VertexSet:
    """Enumerate every (maximal commuting subset, admissible signs) vertex."""
    graph = build_frustration_graph(measurements)
    vertices: List[Vertex] = []
    contexts: List[SignedContext] = []
    for subset in enumerate_maximal_independent_sets(graph):
        signs = admissible_signs(measurements, subset)
        if not signs:
            if verbose:
                print(f"skipping inconsistent context {subset}")
            continue
        for f in signs:
            ctx = SignedContext(subset, f)
            contexts.append(ctx)
            vertices.append(vertex(measurements, ctx))
    assert len(set(vertices)) == len(vertices), "duplicate vertices from distinct contexts"
    return VertexSet(len(measurements), tuple(vertices), tuple(contexts), measurements)


def _isotropic_subspace_count(n: int) -> int:
    # maximal isotropic subspaces of F_2^{2n}: prod_{k=1..n} (2^k + 1)
    count = 1
    for k in range(1, n + 1):
        count *= 2**k + 1
    return count


def size_bound(n: int, m: int) -> int:
    """Computable envelope on the vertex count for any set with these n, m."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    if n <= 4:
        independent_sets = min(3 ** (m // 3 + 1), _isotropic_subspace_count(n))
    else:
        independent_sets = 3 ** (m // 3 + 1)
    return 2 ** min(n, m) * independent_sets


def vertex_set_from_json(text: str) -> VertexSet:
    payload = json.loads(text)
    vertices = tuple(Vertex(tuple(row)) for row in payload["vertices"])
    contexts = tuple(
        SignedContext(tuple(c["set"]), tuple(c["signs"])) for c in payload["contexts"]
    )
    measurements = None
    if payload.get("measurements"):
        measurements = MeasurementSet.from_strings(payload["measurements"])
    return VertexSet(payload["m"], vertices, contexts, measurements)
