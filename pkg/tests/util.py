"""Shared test helpers: dense matrices and hypothesis strategies.

The dense constructions here are deliberately independent of the
package's own bit tricks so that tests compare two different codepaths.
"""

import numpy as np
from hypothesis import strategies as st

from magicscope.pauli import PauliString

_SINGLE = {
    (0, 0): np.eye(2, dtype=complex),
    (1, 0): np.array([[0, 1], [1, 0]], dtype=complex),
    (0, 1): np.array([[1, 0], [0, -1]], dtype=complex),
    (1, 1): np.array([[0, -1], [1, 0]], dtype=complex),  # XZ
}


def pauli_matrix(p: PauliString) -> np.ndarray:
    """Dense 2^n x 2^n matrix of i^k X^a Z^b via per-qubit Kronecker products."""
    full = np.eye(1, dtype=complex)
    # basis-index bit i addresses qubit i+1, so qubit n is the most
    # significant factor and goes leftmost in the chain of krons
    for i in reversed(range(p.n)):
        x = (p.xbits >> i) & 1
        z = (p.zbits >> i) & 1
        full = np.kron(full, _SINGLE[(x, z)])
    return (1j**p.phase_k) * full


def pauli_strings(max_n: int = 3, hermitian: bool = False):
    """Strategy producing random PauliString values."""

    def build(draw_tuple):
        n, x, z, k2, sign = draw_tuple
        mask = (1 << n) - 1
        x &= mask
        z &= mask
        if hermitian:
            k = ((x & z).bit_count() + 2 * sign) % 4
        else:
            k = (k2 + 2 * sign) % 4
        return PauliString(n, k, x, z)

    return st.tuples(
        st.integers(1, max_n),
        st.integers(0, (1 << max_n) - 1),
        st.integers(0, (1 << max_n) - 1),
        st.integers(0, 3),
        st.integers(0, 1),
    ).map(build)


def pauli_pairs(max_n: int = 3, hermitian: bool = False):
    """Two PauliStrings guaranteed to share the same qubit count."""

    def build(draw_tuple):
        n, raw = draw_tuple
        mask = (1 << n) - 1
        out = []
        for x, z, k2, sign in raw:
            x &= mask
            z &= mask
            if hermitian:
                k = ((x & z).bit_count() + 2 * sign) % 4
            else:
                k = (k2 + 2 * sign) % 4
            out.append(PauliString(n, k, x, z))
        return tuple(out)

    single = st.tuples(
        st.integers(0, (1 << max_n) - 1),
        st.integers(0, (1 << max_n) - 1),
        st.integers(0, 3),
        st.integers(0, 1),
    )
    return st.tuples(st.integers(1, max_n), st.tuples(single, single)).map(build)
