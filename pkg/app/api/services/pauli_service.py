"""Pauli group service

Operators are stored in binary symplectic form with an exact phase:

    P = i^phase_exp * prod_j X_j^x_j Z_j^z_j

with X written to the left of Z on every site. Bit j of ``xbits``/``zbits``
refers to qubit j, which is also bit j of a computational basis index.
"""

import re
from dataclasses import dataclass
from typing import Literal

import numpy as np

from app.errors import PauliError

PauliKind = Literal["x", "y", "z"]

_PREFIXES = {"": 0, "+": 0, "+i": 1, "i": 1, "-": 2, "-i": 3}
_TOKEN = re.compile(r"^([XYZI])(\d+)$")
_PHASE_TEXT = {0: "", 1: "+i", 2: "-", 3: "-i"}


@dataclass(frozen=True, slots=True)
class PauliOperator:
    """An n-qubit Pauli string with a phase i^phase_exp."""

    n: int
    xbits: int = 0
    zbits: int = 0
    phase_exp: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise PauliError(f"qubit count must be non-negative, got {self.n}")
        limit = 1 << self.n
        if not (0 <= self.xbits < limit and 0 <= self.zbits < limit):
            raise PauliError(f"bit vectors do not fit in {self.n} qubits")
        if not 0 <= self.phase_exp <= 3:
            object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(n)

    @property
    def y_count(self) -> int:
        return (self.xbits & self.zbits).bit_count()

    @property
    def weight(self) -> int:
        return (self.xbits | self.zbits).bit_count()

    @property
    def support(self) -> tuple[int, ...]:
        bits = self.xbits | self.zbits
        return tuple(j for j in range(self.n) if bits >> j & 1)

    @property
    def is_identity(self) -> bool:
        """True when the Pauli content is trivial (any phase)."""
        return self.xbits == 0 and self.zbits == 0

    @property
    def is_hermitian(self) -> bool:
        return (self.phase_exp + self.y_count) % 2 == 0

    @property
    def is_real(self) -> bool:
        """True when every matrix element is real (i^phase_exp is ±1)."""
        return self.phase_exp % 2 == 0

    def kind_at(self, site: int) -> str:
        """Single-site letter: I, X, Y or Z."""
        x = self.xbits >> site & 1
        z = self.zbits >> site & 1
        return "IZXY"[2 * x + z]

    def same_pauli(self, other: "PauliOperator") -> bool:
        """Equal up to phase."""
        return (self.n, self.xbits, self.zbits) == (other.n, other.xbits, other.zbits)

    def hermitian_parts(self) -> tuple[int, "PauliOperator"]:
        """Split a Hermitian operator into (sign, canonical representative).

        The canonical representative is the plain tensor product of I, X, Y, Z
        with coefficient +1, i.e. phase_exp = (#Y) mod 4.
        """
        if not self.is_hermitian:
            raise PauliError(f"operator {to_text(self)} is not Hermitian")
        canonical = PauliOperator(self.n, self.xbits, self.zbits, self.y_count % 4)
        sign = 1 if (self.phase_exp - canonical.phase_exp) % 4 == 0 else -1
        return sign, canonical

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        return multiply(self, other)

    def __neg__(self) -> "PauliOperator":
        return PauliOperator(self.n, self.xbits, self.zbits, self.phase_exp + 2)

    def __str__(self) -> str:
        return to_text(self)


def hermitian(n: int, xbits: int, zbits: int) -> PauliOperator:
    """Canonical Hermitian operator with the given Pauli content."""
    return PauliOperator(n, xbits, zbits, (xbits & zbits).bit_count() % 4)


def single(n: int, site: int, kind: PauliKind) -> PauliOperator:
    """A single-site Pauli sigma^kind_site on n qubits."""
    if not 0 <= site < n:
        raise PauliError(f"site {site} out of range for {n} qubits")
    bit = 1 << site
    if kind == "x":
        return PauliOperator(n, bit, 0, 0)
    if kind == "y":
        return PauliOperator(n, bit, bit, 1)
    if kind == "z":
        return PauliOperator(n, 0, bit, 0)
    raise PauliError(f"unknown Pauli kind {kind!r}")


def from_sites(n: int, kinds: dict[int, str]) -> PauliOperator:
    """Canonical Hermitian operator from a {site: 'x'|'y'|'z'} map."""
    xbits = zbits = 0
    for site, kind in kinds.items():
        if not 0 <= site < n:
            raise PauliError(f"site {site} out of range for {n} qubits")
        kind = kind.lower()
        if kind in ("x", "y"):
            xbits |= 1 << site
        if kind in ("z", "y"):
            zbits |= 1 << site
    return hermitian(n, xbits, zbits)


def _check_sizes(p: PauliOperator, q: PauliOperator) -> None:
    if p.n != q.n:
        raise PauliError(f"size mismatch: {p.n} vs {q.n} qubits")


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    """Exact product PQ.

    Moving Z^{z_p} past X^{x_q} costs (-1)^{|z_p & x_q|}.
    """
    _check_sizes(p, q)
    phase = p.phase_exp + q.phase_exp + 2 * (p.zbits & q.xbits).bit_count()
    return PauliOperator(p.n, p.xbits ^ q.xbits, p.zbits ^ q.zbits, phase % 4)


def product(ops, n: int) -> PauliOperator:
    """Ordered product of an iterable of operators (identity when empty)."""
    result = PauliOperator.identity(n)
    for op in ops:
        result = multiply(result, op)
    return result


def symplectic_product(p: PauliOperator, q: PauliOperator) -> int:
    _check_sizes(p, q)
    return ((p.xbits & q.zbits).bit_count() + (p.zbits & q.xbits).bit_count()) & 1


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    return symplectic_product(p, q) == 0


def symplectic_vector(p: PauliOperator) -> np.ndarray:
    """GF(2) row [x_0 .. x_{n-1} | z_0 .. z_{n-1}] (phase dropped)."""
    bits = [p.xbits >> j & 1 for j in range(p.n)] + [p.zbits >> j & 1 for j in range(p.n)]
    return np.array(bits, dtype=np.uint8)


def from_symplectic(vector, n: int) -> PauliOperator:
    """Canonical Hermitian operator for a GF(2) row as produced by symplectic_vector."""
    xbits = sum(1 << j for j in range(n) if vector[j])
    zbits = sum(1 << j for j in range(n) if vector[n + j])
    return hermitian(n, xbits, zbits)


def apply(p: PauliOperator, basis_index: int) -> tuple[int, complex]:
    """Action on |basis_index>: returns (new_index, scalar).

    Z acts first (it sits to the right), so no reordering sign appears.
    """
    if not 0 <= basis_index < (1 << p.n):
        raise PauliError(f"basis index {basis_index} out of range for {p.n} qubits")
    exponent = p.phase_exp + 2 * (p.zbits & basis_index).bit_count()
    return basis_index ^ p.xbits, 1j ** (exponent % 4)


def apply_to_state(p: PauliOperator, vector: np.ndarray) -> np.ndarray:
    """Vectorised action on a full state vector of length 2^n."""
    dim = 1 << p.n
    if vector.shape != (dim,):
        raise PauliError(f"state has shape {vector.shape}, expected ({dim},)")
    source = np.arange(dim, dtype=np.int64) ^ p.xbits
    signs = 1 - 2 * (np.bitwise_count(source & p.zbits) & 1).astype(np.int8)
    out = signs * vector[source]
    if p.is_real:
        return out if p.phase_exp == 0 else -out
    return out.astype(np.complex128) * (1j if p.phase_exp == 1 else -1j)


def to_dense(p: PauliOperator) -> np.ndarray:
    """Dense 2^n x 2^n matrix (small n only)."""
    dim = 1 << p.n
    matrix = np.zeros((dim, dim), dtype=np.complex128)
    for col in range(dim):
        row, value = apply(p, col)
        matrix[row, col] = value
    return matrix


def to_text(p: PauliOperator) -> str:
    """Canonical text form, e.g. "-iX0 Z3 Y7"; the identity is written "I"."""
    relative = (p.phase_exp - p.y_count) % 4
    tokens = [f"{p.kind_at(j)}{j}" for j in p.support]
    body = " ".join(tokens) if tokens else "I"
    return f"{_PHASE_TEXT[relative]}{body}"


def parse(text: str, n: int, strict: bool = True) -> PauliOperator:
    """Parse the text form produced by to_text.

    Tokens are multiplied left to right. With ``strict`` a site may appear only
    once; ``strict=False`` accepts products such as "-iX0 Z0".
    """
    text = text.strip().replace("−", "-")
    match = re.match(r"^([+-]?i?)\s*(.*)$", text)
    prefix, body = match.group(1), match.group(2).strip()
    if prefix not in _PREFIXES:
        raise PauliError(f"malformed phase prefix {prefix!r}")
    result = PauliOperator(n, 0, 0, _PREFIXES[prefix])
    if body in ("", "I"):
        if body == "" and prefix == "":
            raise PauliError("empty Pauli string")
        return result

    seen: set[int] = set()
    for token in body.split():
        found = _TOKEN.match(token)
        if not found:
            raise PauliError(f"malformed token {token!r}")
        letter, site = found.group(1), int(found.group(2))
        if site >= n:
            raise PauliError(f"site {site} out of range for {n} qubits")
        if strict and site in seen:
            raise PauliError(f"duplicate site {site}")
        seen.add(site)
        if letter != "I":
            result = multiply(result, single(n, site, letter.lower()))
    return result
