"""Hamiltonian service

Every model is a flat list of (real coefficient, Hermitian Pauli) pairs.
"""

import logging
import math
from dataclasses import dataclass, field

from app.api.schemas.hamiltonian import (
    EffectiveCoefficientsResponse,
    EffectiveReading,
    HamiltonianSummary,
    TermRecord,
)
from app.api.services import pauli_service
from app.api.services.lattice_service import RubyLattice, SquareLattice, TwoColex
from app.api.services.pauli_service import PauliOperator
from app.config import (
    EFFECTIVE_KXY_PREFACTOR,
    EFFECTIVE_KZ_PREFACTOR,
    INTERACTIONS,
    STRONG_COUPLING_RATIO,
)
from app.errors import ConfigError, StructureError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Couplings:
    jx: float = 1.0
    jy: float = 1.0
    jz: float = 1.0

    def __post_init__(self):
        for name in ("jx", "jy", "jz"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite", {name: getattr(self, name)})

    def for_color(self, color: str) -> float:
        return {"red": self.jx, "green": self.jy, "blue": self.jz}[color]

    def negated(self) -> "Couplings":
        return Couplings(-self.jx, -self.jy, -self.jz)


@dataclass(frozen=True)
class HamiltonianTerms:
    n: int
    terms: tuple[tuple[float, PauliOperator], ...]
    model: str = "custom"
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        for k, (coef, op) in enumerate(self.terms):
            if op.n != self.n:
                raise StructureError(
                    f"term {k} acts on {op.n} qubits, expected {self.n}", {"term": k}
                )
            if not op.is_hermitian:
                raise StructureError(f"term {k} is not Hermitian", {"term": k})
            if not math.isfinite(coef):
                raise StructureError(f"term {k} has a non-finite coefficient", {"term": k})

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def operators(self) -> list[PauliOperator]:
        return [op for _, op in self.terms]

    @property
    def zero_terms(self) -> list[int]:
        """Indices of terms kept with a zero coefficient."""
        return [k for k, (coef, _) in enumerate(self.terms) if coef == 0.0]

    @property
    def is_real(self) -> bool:
        return all(op.is_real for _, op in self.terms)

    @property
    def norm_bound(self) -> float:
        """Upper bound on the spectral radius."""
        return sum(abs(coef) for coef, _ in self.terms)

    @property
    def is_diagonal(self) -> bool:
        """True when every term with a nonzero coefficient is built from Z only."""
        return all(op.xbits == 0 for coef, op in self.terms if coef != 0.0)


def _flag_zero(h: HamiltonianTerms) -> HamiltonianTerms:
    if h.zero_terms:
        logger.warning(
            "%s Hamiltonian keeps %d zero-coefficient term(s)", h.model, len(h.zero_terms)
        )
    return h


def build_two_body(lat: RubyLattice, c: Couplings) -> HamiltonianTerms:
    """H = sum over links of J_w sigma^w_i sigma^w_j, w fixed by the link colour."""
    n = lat.n_sites
    terms = []
    labels = []
    for e in lat.edges:
        kind = INTERACTIONS[e.color]
        terms.append((c.for_color(e.color), pauli_service.from_sites(n, {e.a: kind, e.b: kind})))
        labels.append(f"{e.color} {e.a}-{e.b}")
    h = HamiltonianTerms(n=n, terms=tuple(terms), model="two-body", labels=tuple(labels))
    logger.info("two-body Hamiltonian: %d qubits, %d terms", n, len(h))
    return _flag_zero(h)


def toric_plaquette(sq: SquareLattice, index: int) -> PauliOperator:
    c1, c2, c3, c4 = sq.plaquettes[index].corners
    return pauli_service.from_sites(sq.n_sites, {c1: "x", c2: "x", c3: "z", c4: "z"})


def build_toric(sq: SquareLattice) -> HamiltonianTerms:
    """H = -sum_p X_1 X_2 Z_3 Z_4 over all plaquettes."""
    terms = tuple((-1.0, toric_plaquette(sq, k)) for k in range(len(sq.plaquettes)))
    labels = tuple(f"A{p.origin}" for p in sq.plaquettes)
    return HamiltonianTerms(n=sq.n_sites, terms=terms, model="toric", labels=labels)


def face_stabilizers(colex: TwoColex, face: int) -> tuple[PauliOperator, PauliOperator]:
    """(B^x, B^y) for one colex face."""
    verts = colex.faces[face].vertices
    if len(verts) % 2:
        raise StructureError(
            f"face {face} has {len(verts)} vertices; B^y needs an even count",
            {"face": face},
        )
    n = colex.n_vertices
    return (
        pauli_service.from_sites(n, {v: "x" for v in verts}),
        pauli_service.from_sites(n, {v: "y" for v in verts}),
    )


def build_color_code(colex: TwoColex) -> HamiltonianTerms:
    """H = -sum_p (B^x_p + B^y_p)."""
    terms = []
    labels = []
    for k in range(len(colex.faces)):
        bx, by = face_stabilizers(colex, k)
        terms += [(-1.0, bx), (-1.0, by)]
        labels += [f"Bx{k}", f"By{k}"]
    return HamiltonianTerms(
        n=colex.n_vertices, terms=tuple(terms), model="color", labels=tuple(labels)
    )


def _coefficients(c: Couplings, reading: EffectiveReading) -> dict[str, float]:
    base = abs(c.jx * c.jy) ** 3
    other = abs(c.jx) if reading == "symmetric" else abs(c.jz)
    return {
        "kx": EFFECTIVE_KXY_PREFACTOR * base * abs(c.jy) ** 3,
        "ky": EFFECTIVE_KXY_PREFACTOR * base * other**3,
        "kz": EFFECTIVE_KZ_PREFACTOR * base,
    }


def effective_coefficients(
    c: Couplings, reading: EffectiveReading = "symmetric"
) -> EffectiveCoefficientsResponse:
    """
    Effective color-code couplings of the strong-coupling expansion.

    Args:
        c: Two-body couplings (J_z sets the scale)
        reading: "symmetric" uses |J_x|^3 in k_y; "literal" uses |J_z|^3 as printed

    Returns:
        Chosen coefficients plus both readings for audit
    """
    if reading not in ("symmetric", "literal"):
        raise ConfigError(f"unknown reading {reading!r}")
    if c.jx < 0 or c.jy < 0 or max(abs(c.jx), abs(c.jy)) > STRONG_COUPLING_RATIO * abs(c.jz):
        logger.warning(
            "couplings (%g, %g, %g) are outside the strong-coupling window", c.jx, c.jy, c.jz
        )
    chosen = _coefficients(c, reading)
    return EffectiveCoefficientsResponse(
        **chosen,
        reading=reading,
        literal=_coefficients(c, "literal"),
        symmetric=_coefficients(c, "symmetric"),
    )


def build_effective(
    colex: TwoColex, c: Couplings, reading: EffectiveReading = "symmetric"
) -> HamiltonianTerms:
    """H_eff = -sum_p (k_x B^x_p + k_y B^y_p + k_z B^x_p B^y_p).

    B^x_p B^y_p is a phase times a Z string; the phase is folded into the
    coefficient so every stored operator is a plain Hermitian Pauli.
    """
    k = effective_coefficients(c, reading)
    terms = []
    labels = []
    for f in range(len(colex.faces)):
        bx, by = face_stabilizers(colex, f)
        sign, zz = pauli_service.multiply(bx, by).hermitian_parts()
        terms += [(-k.kx, bx), (-k.ky, by), (-k.kz * sign, zz)]
        labels += [f"Bx{f}", f"By{f}", f"BxBy{f}"]
    return HamiltonianTerms(
        n=colex.n_vertices, terms=tuple(terms), model="effective", labels=tuple(labels)
    )


def summarize(h: HamiltonianTerms) -> HamiltonianSummary:
    return HamiltonianSummary(
        model=h.model,
        n_qubits=h.n,
        n_terms=len(h),
        zero_terms=h.zero_terms,
        is_real=h.is_real,
    )


def to_jsonl(h: HamiltonianTerms) -> str:
    """Term list as JSON lines of {coefficient, pauli_text}."""
    return "".join(
        TermRecord(coefficient=coef, pauli_text=pauli_service.to_text(op)).model_dump_json()
        + "\n"
        for coef, op in h.terms
    )


def from_jsonl(text: str, n: int, model: str = "custom") -> HamiltonianTerms:
    terms = []
    for line in text.splitlines():
        if not line.strip():
            continue
        record = TermRecord.model_validate_json(line)
        terms.append((record.coefficient, pauli_service.parse(record.pauli_text, n)))
    return HamiltonianTerms(n=n, terms=tuple(terms), model=model)
