"""Stabilizer code service"""

import functools
import itertools
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from app.api.schemas.code import (
    ChargeRecord,
    ChargeTableResponse,
    CodeFamily,
    CodeReport,
    RelationRecord,
)
from app.api.services import gf2, pauli_service
from app.api.services.hamiltonian_service import HamiltonianTerms
from app.api.services.pauli_service import PauliOperator
from app.config import DENSE_MAX_QUBITS
from app.errors import ConfigError, PauliError, StructureError

logger = logging.getLogger(__name__)

_SIGN = {0: 1, 2: -1}


@dataclass(frozen=True)
class StabilizerGroup:
    n: int
    generators: tuple[PauliOperator, ...]

    @functools.cached_property
    def check_matrix(self) -> np.ndarray:
        if not self.generators:
            return np.zeros((0, 2 * self.n), dtype=np.uint8)
        return np.array([pauli_service.symplectic_vector(g) for g in self.generators])

    @functools.cached_property
    def reduction(self) -> Optional[gf2.RowReduceResult]:
        if not self.generators:
            return None
        return gf2.row_reduce(self.check_matrix)

    @property
    def rank(self) -> int:
        return self.reduction.rank if self.reduction else 0


def decompose_ops(ops, target: PauliOperator) -> Optional[tuple[list[int], Optional[int]]]:
    """
    Indices of ``ops`` whose ordered product matches ``target`` up to phase.

    Returns (indices, sign) with sign +1 or -1 when the product is exactly
    ±target, or None in the sign slot when they differ by ±i. Returns None
    when ``target`` is outside the span.
    """
    ops = list(ops)
    if not ops:
        return ([], _SIGN.get(target.phase_exp)) if target.is_identity else None
    matrix = np.array([pauli_service.symplectic_vector(p) for p in ops])
    combo = gf2.solve(matrix, pauli_service.symplectic_vector(target))
    if combo is None:
        return None
    chosen = [k for k in range(len(ops)) if combo[k]]
    prod = pauli_service.product((ops[k] for k in chosen), target.n)
    return chosen, _SIGN.get((prod.phase_exp - target.phase_exp) % 4)


def relations(g: StabilizerGroup) -> list[tuple[list[int], int]]:
    """Basis of generator products with trivial Pauli content, with their signs."""
    red = g.reduction
    if red is None:
        return []
    found = []
    for r in range(red.rank, len(g.generators)):
        members = [k for k in range(len(g.generators)) if red.transform[r, k]]
        prod = pauli_service.product((g.generators[k] for k in members), g.n)
        sign = _SIGN.get(prod.phase_exp)
        if sign is None:
            raise StructureError("generators multiply to ±i times identity", {"generators": members})
        found.append((members, sign))
    return found


def from_terms(h: HamiltonianTerms) -> StabilizerGroup:
    """Group generated by the Pauli content of a commuting term list."""
    ops = [op for _, op in h.terms]
    for (i, p), (j, q) in itertools.combinations(enumerate(ops), 2):
        if not pauli_service.commutes(p, q):
            raise StructureError(
                f"terms {i} and {j} do not commute",
                {
                    "pair": [i, j],
                    "operators": [pauli_service.to_text(p), pauli_service.to_text(q)],
                },
            )
    group = StabilizerGroup(n=h.n, generators=tuple(ops))
    for members, sign in relations(group):
        if sign < 0:
            raise StructureError(
                "the generators produce -identity; no common +1 eigenspace",
                {"generators": members},
            )
    logger.info("stabilizer group: %d generators on %d qubits, rank %d", len(ops), h.n, group.rank)
    return group


def rank_and_logicals(g: StabilizerGroup) -> tuple[int, int, int]:
    """(rank, k = n - rank, degeneracy = 2^k)."""
    k = g.n - g.rank
    return g.rank, k, 2**k


def decompose(g: StabilizerGroup, op: PauliOperator) -> Optional[tuple[list[int], Optional[int]]]:
    if op.n != g.n:
        raise PauliError(f"size mismatch: {op.n} vs {g.n} qubits")
    return decompose_ops(g.generators, op)


def syndrome(g: StabilizerGroup, error: PauliOperator) -> np.ndarray:
    """Bit i is set when the error anticommutes with generator i."""
    if error.n != g.n:
        raise PauliError(f"size mismatch: {error.n} vs {g.n} qubits")
    return np.array(
        [pauli_service.symplectic_product(error, s) for s in g.generators], dtype=np.uint8
    )


def joint_eigenspace_dimension(g: StabilizerGroup) -> int:
    """Brute-force dimension of the common +1 eigenspace (small n only)."""
    if g.n > DENSE_MAX_QUBITS:
        raise StructureError(f"brute-force projector limited to {DENSE_MAX_QUBITS} qubits")
    dim = 1 << g.n
    projector = np.eye(dim, dtype=np.complex128)
    for s in g.generators:
        projector = projector @ ((np.eye(dim) + pauli_service.to_dense(s)) / 2)
    return int(round(np.trace(projector).real))


def code_report(g: StabilizerGroup, family: Optional[CodeFamily] = None) -> CodeReport:
    rank, k, degeneracy = rank_and_logicals(g)
    return CodeReport(
        n_qubits=g.n,
        n_generators=len(g.generators),
        rank=rank,
        k=k,
        degeneracy=degeneracy,
        relations=[RelationRecord(generators=m, sign=s) for m, s in relations(g)],
        brute_force_degeneracy=(
            joint_eigenspace_dimension(g) if g.n <= DENSE_MAX_QUBITS else None
        ),
        charges=charge_table(family) if family else None,
    )


# ---------------------------------------------------------------------------
# Topological charges
# ---------------------------------------------------------------------------

# colour -> Z2 x Z2 vector; blue is the fusion of red and green
_COLOR_VECTOR = {"red": (1, 0), "green": (0, 1), "blue": (1, 1)}
_VECTOR_COLOR = {v: c for c, v in _COLOR_VECTOR.items()}


def _toric_charges() -> list[ChargeRecord]:
    names = {(0, 0): ("1", "vacuum"), (1, 0): ("e", "boson"), (0, 1): ("m", "boson"), (1, 1): ("f", "fermion")}
    return [ChargeRecord(name=n, vector=list(v), statistics=s) for v, (n, s) in names.items()]


def _color_name(u, v) -> str:
    parts = []
    if u != (0, 0):
        parts.append(f"x:{_VECTOR_COLOR[u]}")
    if v != (0, 0):
        parts.append(f"y:{_VECTOR_COLOR[v]}")
    return "+".join(parts) or "1"


def _color_charges() -> list[ChargeRecord]:
    records = []
    zero = (0, 0)
    for u in [zero, *_COLOR_VECTOR.values()]:
        for v in [zero, *_COLOR_VECTOR.values()]:
            if u == zero and v == zero:
                stats = "vacuum"
            elif u != zero and v != zero and u != v:
                stats = "fermion"
            else:
                stats = "boson"
            records.append(ChargeRecord(name=_color_name(u, v), vector=[*u, *v], statistics=stats))
    return records


def fuse(a: ChargeRecord, b: ChargeRecord, table: list[ChargeRecord]) -> ChargeRecord:
    vector = [x ^ y for x, y in zip(a.vector, b.vector)]
    for c in table:
        if c.vector == vector:
            return c
    raise StructureError("fusion left the charge table")


def charge_table(family: CodeFamily) -> ChargeTableResponse:
    """
    Charges with fusion rules and statistics tags.

    Toric code: Z2 x Z2 with bosons e, m and the fermion f = e x m.
    Color code: Z2^4 as (x-type colour, y-type colour), each colour a Z2 x Z2
    vector with blue = red x green. A charge is a fermion when both parts are
    present and of different colours.
    """
    if family == "toric":
        charges, group = _toric_charges(), "Z2xZ2"
    elif family == "color":
        charges, group = _color_charges(), "Z2^4"
    else:
        raise ConfigError(f"unknown code family {family!r}", {"family": family})
    fusion = {a.name: {b.name: fuse(a, b, charges).name for b in charges} for a in charges}
    return ChargeTableResponse(
        family=family,
        group=group,
        charges=charges,
        nontrivial=sum(1 for c in charges if c.statistics != "vacuum"),
        fusion=fusion,
    )
