"""Signed Pauli strings in the binary symplectic representation.

A Pauli operator is stored as ``i^phase_k * X^xbits * Z^zbits`` with
``xbits``/``zbits`` packed into Python ints (bit ``i`` = qubit ``i+1``,
so qubit 1 is the leftmost character of the text form).  Hermitian
strings satisfy ``phase_k = popcount(xbits & zbits) (mod 2)``; general
products may pick up factors of ``+-i`` and are allowed to carry any
phase exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

__all__ = [
    "PauliString",
    "MeasurementSet",
    "PauliError",
    "parse_pauli",
    "format_pauli",
    "multiply",
    "commutes",
    "identity_sign",
    "pad",
    "read_measurement_file",
]


class PauliError(ValueError):
    """Malformed Pauli text or an invalid measurement set."""


@dataclass(frozen=True)
class PauliString:
    n: int
    phase_k: int
    xbits: int
    zbits: int

    def __post_init__(self):
        if self.n <= 0:
            raise PauliError("qubit count must be positive")
        if not 0 <= self.phase_k <= 3:
            raise PauliError("phase exponent must be in {0,1,2,3}")
        mask = (1 << self.n) - 1
        if self.xbits & ~mask or self.zbits & ~mask:
            raise PauliError("bit-vectors longer than qubit count")

    @property
    def is_hermitian(self) -> bool:
        return (self.phase_k - (self.xbits & self.zbits).bit_count()) % 2 == 0

    def __str__(self) -> str:
        return format_pauli(self)


_CHAR_XZ = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


def parse_pauli(text: str) -> PauliString:
    """Parse e.g. ``-XIY`` into a PauliString (Y counts as iXZ)."""
    body = text.strip()
    phase_k = 0
    if body and body[0] in "+-":
        if body[0] == "-":
            phase_k = 2
        body = body[1:]
    if not body:
        raise PauliError(f"empty Pauli body in {text!r}")
    xbits = zbits = 0
    for i, ch in enumerate(body):
        try:
            x, z = _CHAR_XZ[ch]
        except KeyError:
            raise PauliError(f"bad character {ch!r} in {text!r}") from None
        xbits |= x << i
        zbits |= z << i
        if ch == "Y":
            phase_k += 1
    return PauliString(len(body), phase_k % 4, xbits, zbits)


def format_pauli(p: PauliString) -> str:
    """Inverse of parse_pauli for Hermitian strings."""
    chars = []
    y_count = 0
    for i in range(p.n):
        x = (p.xbits >> i) & 1
        z = (p.zbits >> i) & 1
        chars.append("IXZY"[x + 2 * z])
        if x and z:
            y_count += 1
    k = (p.phase_k - y_count) % 4
    if k == 0:
        sign = "+"
    elif k == 2:
        sign = "-"
    else:
        raise PauliError("cannot format a non-Hermitian phase")
    return sign + "".join(chars)


def multiply(p1: PauliString, p2: PauliString) -> PauliString:
    """Operator product p1 p2; phase picks up (-1)^(b1.a2)."""
    if p1.n != p2.n:
        raise PauliError("qubit counts differ")
    k = p1.phase_k + p2.phase_k + 2 * (p1.zbits & p2.xbits).bit_count()
    return PauliString(p1.n, k % 4, p1.xbits ^ p2.xbits, p1.zbits ^ p2.zbits)


def commutes(p1: PauliString, p2: PauliString) -> bool:
    """True iff the symplectic form a1.b2 + a2.b1 vanishes mod 2."""
    if p1.n != p2.n:
        raise PauliError("qubit counts differ")
    omega = (p1.xbits & p2.zbits).bit_count() + (p2.xbits & p1.zbits).bit_count()
    return omega % 2 == 0


def identity_sign(p: PauliString) -> Optional[int]:
    """+1/-1 if p is (+-)identity, None if p is not proportional to it."""
    if p.xbits or p.zbits:
        return None
    if p.phase_k % 2:
        raise PauliError("imaginary multiple of the identity")
    return 1 if p.phase_k == 0 else -1


def identity(n: int) -> PauliString:
    return PauliString(n, 0, 0, 0)


def pad(p: PauliString, n_prime: int) -> PauliString:
    """Embed p on n_prime qubits, identity on the appended ones."""
    if n_prime < p.n:
        raise PauliError("cannot pad to fewer qubits")
    return PauliString(n_prime, p.phase_k, p.xbits, p.zbits)


@dataclass(frozen=True)
class MeasurementSet:
    """Ordered set of m Hermitian n-qubit Paulis defining a projection.

    Exact duplicates are rejected; a (P, -P) pair is allowed.  The
    identity is rejected since <1> = 1 carries no information and would
    degenerate the LP.
    """

    paulis: tuple

    def __post_init__(self):
        if not self.paulis:
            raise PauliError("measurement set must not be empty")
        n = self.paulis[0].n
        seen = set()
        for p in self.paulis:
            if p.n != n:
                raise PauliError("mixed qubit counts in measurement set")
            if not p.is_hermitian:
                raise PauliError(f"non-Hermitian measurement {p!r}")
            if p.xbits == 0 and p.zbits == 0:
                raise PauliError("identity is not a valid measurement")
            key = (p.phase_k, p.xbits, p.zbits)
            if key in seen:
                raise PauliError(f"duplicate measurement {format_pauli(p)}")
            seen.add(key)

    @classmethod
    def from_strings(cls, texts: Iterable[str]) -> "MeasurementSet":
        return cls(tuple(parse_pauli(t) for t in texts))

    @property
    def n(self) -> int:
        return self.paulis[0].n

    @property
    def m(self) -> int:
        return len(self.paulis)

    def padded(self, n_prime: int) -> "MeasurementSet":
        return MeasurementSet(tuple(pad(p, n_prime) for p in self.paulis))

    def __iter__(self):
        return iter(self.paulis)

    def __len__(self):
        return len(self.paulis)

    def __getitem__(self, i):
        return self.paulis[i]


def read_measurement_file(path) -> MeasurementSet:
    """One Pauli per line; '#' comments and blank lines are skipped."""
    texts = []
    width = None
    seen = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            body = line.lstrip("+-")
            if width is None:
                width = len(body)
            elif len(body) != width:
                raise PauliError(f"line {lineno}: width {len(body)} != {width}")
            try:
                parsed = parse_pauli(line)
                texts.append(line)
            except PauliError as exc:
                raise PauliError(f"line {lineno}: {exc}") from None
            key = (parsed.phase_k, parsed.xbits, parsed.zbits)
            if key in seen:
                raise PauliError(
                    f"line {lineno}: duplicate measurement {format_pauli(parsed)}"
                    f" (first seen on line {seen[key]})"
                )
            seen[key] = lineno
    if not texts:
        raise PauliError("no measurements in file")
    try:
        return MeasurementSet.from_strings(texts)
    except PauliError as exc:
        raise PauliError(str(exc)) from None
