"""Integral-of-motion service

IOMs are found by solving the commutation constraints over GF(2) on a patch
of sites. Columns are (x_s, z_s) for every support site in increasing site
order. Every term touching the patch adds one row: the symplectic product with
the candidate, restricted to the patch. In strip mode (``interior`` given) a
term outside the interior adds one row per patch site it touches instead, so
the solution stays local to the strip.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from app.api.schemas.iom import (
    IomRecord,
    IomReport,
    LogicalRelations,
    LogicalReport,
    PlaquetteReport,
    StringnetReport,
    StringReport,
)
from app.api.services import code_service, gf2, pauli_service
from app.api.services.hamiltonian_service import HamiltonianTerms
from app.api.services.lattice_service import (
    RubyLattice,
    close_walk,
    contract_triangles,
    find_cycle,
)
from app.api.services.pauli_service import PauliOperator
from app.config import COLORS, LOCAL_SOLVE_MAX_SITES
from app.errors import InvariantViolation, LatticeError, StructureError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntegralOfMotion:
    op: PauliOperator
    kind: str
    label: str
    face: Optional[int] = None
    color: Optional[str] = None
    homology: Optional[tuple[int, int]] = None
    path: tuple[int, ...] = ()
    components: tuple[str, ...] = ()

    @property
    def name(self) -> str:
        if self.kind == "plaquette":
            return f"{self.label}{self.face}"
        if self.kind == "string":
            return f"{self.color}{list(self.path)}"
        return "net"


def _row(op: PauliOperator, sites, column: dict[int, int]) -> np.ndarray:
    row = np.zeros(2 * len(column), dtype=np.uint8)
    for s in sites:
        row[column[s]] = op.zbits >> s & 1
        row[column[s] + 1] = op.xbits >> s & 1
    return row


def find_local_ioms(
    h: HamiltonianTerms, support, interior=None
) -> list[PauliOperator]:
    """
    GF(2) basis of Pauli operators on ``support`` that commute with every term.

    Args:
        h: Hamiltonian whose terms constrain the solution
        support: Sites the operators may act on
        interior: Optional set of site pairs (frozensets) whose terms count as
            inside a strip; by default every term constrains as a whole

    Returns:
        Canonical Hermitian basis in reduced echelon order, identity excluded
    """
    sites = sorted(set(support))
    if len(sites) > LOCAL_SOLVE_MAX_SITES:
        raise StructureError(
            f"support of {len(sites)} sites exceeds the local solve limit",
            {"limit": LOCAL_SOLVE_MAX_SITES},
        )
    column = {s: 2 * k for k, s in enumerate(sites)}
    rows = []
    for _, op in h.terms:
        touched = [s for s in op.support if s in column]
        if not touched:
            continue
        if interior is None or (
            frozenset(op.support) in interior and len(touched) == op.weight
        ):
            rows.append(_row(op, touched, column))
        else:
            rows.extend(_row(op, [s], column) for s in touched)

    basis = gf2.nullspace(np.array(rows, dtype=np.uint8), ncols=2 * len(sites))
    result = []
    for vec in basis:
        xbits = sum(1 << s for s in sites if vec[column[s]])
        zbits = sum(1 << s for s in sites if vec[column[s] + 1])
        result.append(pauli_service.hermitian(h.n, xbits, zbits))
    logger.debug("local solve on %d sites: %d rows, %d solutions", len(sites), len(rows), len(result))
    return result


def anticommuting_terms(h: HamiltonianTerms, op: PauliOperator) -> list[int]:
    return [k for k, (_, term) in enumerate(h.terms) if not pauli_service.commutes(op, term)]


def _squares_to_identity(op: PauliOperator) -> bool:
    sq = pauli_service.multiply(op, op)
    return sq.is_identity and sq.phase_exp == 0


def to_record(iom: IntegralOfMotion, h: HamiltonianTerms) -> IomRecord:
    return IomRecord(
        kind=iom.kind,
        label=iom.label,
        pauli_text=pauli_service.to_text(iom.op),
        weight=iom.op.weight,
        face=iom.face,
        color=iom.color,
        homology=iom.homology,
        path=list(iom.path),
        components=list(iom.components),
        hermitian=iom.op.is_hermitian,
        squares_to_identity=_squares_to_identity(iom.op),
        commutes_with_hamiltonian=not anticommuting_terms(h, iom.op),
    )


def _independent(ops) -> int:
    ops = list(ops)
    if not ops:
        return 0
    return gf2.rank(np.array([pauli_service.symplectic_vector(p) for p in ops]))


# ---------------------------------------------------------------------------
# Strings along closed paths of triangles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Strip:
    path: tuple[int, ...]
    squares: tuple[int, ...]
    support: tuple[int, ...]
    interior: frozenset


def _strip(lat: RubyLattice, cycle) -> _Strip:
    path = close_walk(cycle)
    if len(path) < 3 or len(set(path)) != len(path):
        raise StructureError(
            "string paths must be simple closed walks of triangles", {"path": list(path)}
        )
    if any(not 0 <= v < len(lat.triangles) for v in path):
        raise StructureError("path names an unknown triangle", {"path": list(path)})
    squares = []
    for step, (a, b) in enumerate(zip(path, path[1:] + path[:1])):
        k = lat.square_between.get((a, b))
        if k is None:
            message = (
                "open path: the last triangle is not linked to the first"
                if step == len(path) - 1
                else f"triangles {a} and {b} are not linked"
            )
            raise StructureError(message, {"path": list(path)})
        squares.append(k)

    interior = set()
    for v in path:
        t = lat.triangles[v]
        interior |= {frozenset(p) for p in ((t[0], t[1]), (t[1], t[2]), (t[0], t[2]))}
    for k in squares:
        face = lat.faces[k]
        for e in (face.edges[0], face.edges[2]):
            interior.add(frozenset((lat.edges[e].a, lat.edges[e].b)))
    support = tuple(s for v in path for s in lat.triangles[v])
    return _Strip(tuple(path), tuple(squares), support, frozenset(interior))


def path_homology(lat: RubyLattice, cycle) -> tuple[int, int]:
    """Z2 x Z2 class of a closed path of triangles, read off the square windings."""
    strip = _strip(lat, cycle)
    wx = wy = 0
    for a, k in zip(strip.path, strip.squares):
        red = lat.edges[lat.faces[k].edges[0]]
        start = red.a if lat.sites[red.a].triangle == a else red.b
        dx, dy = red.winding_from(start)
        wx += dx
        wy += dy
    return wx % 2, wy % 2


def _string_color(lat: RubyLattice, strip: _Strip, op: PauliOperator) -> str:
    """
    Colour of a string from its action on the first square of the path.

    For each non-blue edge of that square, take the operator's factor at the
    endpoint on the first triangle and ask whether it anticommutes with the
    edge's interaction (z bit for red, x xor z for green). One hit names that
    edge's hexagon colour, two hits the remaining colour.
    """
    face = lat.faces[strip.squares[0]]
    first = set(lat.triangles[strip.path[0]])
    hits = []
    hexes = []
    for e in (face.edges[0], face.edges[2]):
        edge = lat.edges[e]
        site = edge.a if edge.a in first else edge.b
        x, z = op.xbits >> site & 1, op.zbits >> site & 1
        hits.append(z if edge.color == "red" else x ^ z)
        hexes.append(lat.sites[site].color)
    if hits == [1, 1]:
        return COLORS[3 - hexes[0] - hexes[1]]
    if hits == [1, 0]:
        return COLORS[hexes[0]]
    if hits == [0, 1]:
        return COLORS[hexes[1]]
    raise InvariantViolation("string operator is trivial on its first square")


def _strip_solutions(lat: RubyLattice, h: HamiltonianTerms, strip: _Strip) -> list[PauliOperator]:
    basis = find_local_ioms(h, strip.support, strip.interior)
    if len(basis) != 2:
        raise InvariantViolation(
            f"expected two independent operators along the path, found {len(basis)}",
            {"path": list(strip.path)},
        )
    a, b = basis
    return [a, b, pauli_service.hermitian(h.n, a.xbits ^ b.xbits, a.zbits ^ b.zbits)]


def string_ioms(
    lat: RubyLattice, h: HamiltonianTerms, cycle
) -> tuple[IntegralOfMotion, IntegralOfMotion, IntegralOfMotion]:
    """The three string IOMs on a closed path, ordered red, green, blue."""
    strip = _strip(lat, cycle)
    homology = path_homology(lat, strip.path)
    by_color = {}
    for op in _strip_solutions(lat, h, strip):
        color = _string_color(lat, strip, op)
        by_color[color] = IntegralOfMotion(
            op=op,
            kind="string",
            label=color,
            color=color,
            homology=homology,
            path=strip.path,
        )
    if len(by_color) != 3:
        raise InvariantViolation("string colours along the path are not distinct")
    return tuple(by_color[c] for c in COLORS)


def string_iom(lat: RubyLattice, h: HamiltonianTerms, cycle, color: str) -> IntegralOfMotion:
    if color not in COLORS:
        raise StructureError(f"unknown string colour {color!r}")
    return string_ioms(lat, h, cycle)[COLORS.index(color)]


def string_report(lat: RubyLattice, h: HamiltonianTerms, cycle) -> StringReport:
    strings = string_ioms(lat, h, cycle)
    ops = [s.op for s in strings]
    closes = all(
        pauli_service.multiply(p, q).same_pauli(r)
        for p, q, r in ((ops[0], ops[1], ops[2]), (ops[1], ops[2], ops[0]), (ops[0], ops[2], ops[1]))
    )
    return StringReport(
        path=list(strings[0].path),
        homology=strings[0].homology,
        strings=[to_record(s, h) for s in strings],
        independent=_independent(ops),
        products_close=closes,
    )


# ---------------------------------------------------------------------------
# Plaquettes
# ---------------------------------------------------------------------------


def plaquette_ioms(
    lat: RubyLattice, h: HamiltonianTerms, face: int
) -> tuple[IntegralOfMotion, IntegralOfMotion, IntegralOfMotion]:
    """
    (A, B, C) on the ring of triangles around one hexagon.

    Labels follow the operator's letters on the hexagon itself: all X is A,
    all Y is B, all Z is C. With canonical phases C = -AB holds exactly.
    """
    if not 0 <= face < len(lat.hexagons):
        raise StructureError(f"hexagon {face} does not exist", {"face": face})
    hexagon = lat.faces[lat.hexagons[face]]
    strip = _strip(lat, hexagon.triangles)
    labelled = {}
    for op in _strip_solutions(lat, h, strip):
        letters = {op.kind_at(s) for s in hexagon.sites}
        label = {"X": "A", "Y": "B", "Z": "C"}.get(letters.pop()) if len(letters) == 1 else None
        if label is None or label in labelled:
            raise InvariantViolation(
                f"cannot label plaquette operator {pauli_service.to_text(op)}", {"face": face}
            )
        labelled[label] = IntegralOfMotion(
            op=op, kind="plaquette", label=label, face=face, color=hexagon.color, path=strip.path
        )
    a, b, c = labelled["A"], labelled["B"], labelled["C"]
    if pauli_service.multiply(a.op, b.op) != -c.op:
        raise InvariantViolation("plaquette operators violate C = -AB", {"face": face})
    return a, b, c


def all_plaquette_ioms(lat: RubyLattice, h: HamiltonianTerms) -> list[tuple[IntegralOfMotion, ...]]:
    return [plaquette_ioms(lat, h, f) for f in range(len(lat.hexagons))]


def plaquette_report(lat: RubyLattice, h: HamiltonianTerms, face: int) -> PlaquetteReport:
    a, b, c = plaquette_ioms(lat, h, face)
    return PlaquetteReport(
        face=face,
        color=a.color,
        A=to_record(a, h),
        B=to_record(b, h),
        C=to_record(c, h),
        independent=_independent([a.op, b.op, c.op]),
        c_equals_minus_ab=pauli_service.multiply(a.op, b.op) == -c.op,
    )


# ---------------------------------------------------------------------------
# String-nets
# ---------------------------------------------------------------------------


def build_stringnet(components) -> IntegralOfMotion:
    """Product of mutually commuting IOMs, in the order given."""
    components = list(components)
    if not components:
        raise StructureError("a string-net needs at least one component")
    for p, q in itertools.combinations(components, 2):
        if not pauli_service.commutes(p.op, q.op):
            raise StructureError(
                "string-net components must commute",
                {"pair": [p.name, q.name]},
            )
    op = pauli_service.product((c.op for c in components), components[0].op.n)
    return IntegralOfMotion(
        op=op,
        kind="stringnet",
        label="net",
        components=tuple(c.name for c in components),
    )


def stringnet_verify(
    lat: RubyLattice, h: HamiltonianTerms, net: IntegralOfMotion, plaquettes=None
) -> StringnetReport:
    """Commutation check plus decomposition over the plaquette A and B operators."""
    if plaquettes is None:
        plaquettes = all_plaquette_ioms(lat, h)
    generators = [iom for triple in plaquettes for iom in triple[:2]]
    bad = anticommuting_terms(h, net.op)
    found = code_service.decompose_ops([g.op for g in generators], net.op)
    if found is None:
        decomposition, sign = None, None
    else:
        decomposition = [generators[k].name for k in found[0]]
        sign = found[1]
    return StringnetReport(
        net=to_record(net, h),
        anticommuting_terms=bad,
        commutes_with_hamiltonian=not bad,
        in_plaquette_span=found is not None,
        decomposition=decomposition,
        sign=sign,
    )


# ---------------------------------------------------------------------------
# Torus logical algebra
# ---------------------------------------------------------------------------

_COMMUTING = (("Z1", "Z2"), ("X1", "X2"), ("Z1", "X2"), ("Z2", "X1"))
_ANTICOMMUTING = (("Z1", "X1"), ("Z2", "X2"))


def logical_relations(ops: dict[str, PauliOperator]) -> LogicalRelations:
    return LogicalRelations(
        commuting_pairs={
            f"[{p},{q}]": pauli_service.commutes(ops[p], ops[q]) for p, q in _COMMUTING
        },
        anticommuting_pairs={
            f"{{{p},{q}}}": not pauli_service.commutes(ops[p], ops[q]) for p, q in _ANTICOMMUTING
        },
        squares={f"{p}^2": _squares_to_identity(ops[p]) for p in ("X1", "Z1", "X2", "Z2")},
    )


def _holds(relations: LogicalRelations) -> bool:
    return all(
        all(group.values())
        for group in (relations.commuting_pairs, relations.anticommuting_pairs, relations.squares)
    )


def _assignments(first, second):
    """Designated choice first, then every colour combination."""
    f, s = dict(zip(COLORS, first)), dict(zip(COLORS, second))
    yield "designated", {"Z1": f["red"], "X1": s["green"], "Z2": f["green"], "X2": s["red"]}
    for z1, z2 in itertools.permutations(COLORS, 2):
        for x1, x2 in itertools.permutations(COLORS, 2):
            yield (
                f"Z1={z1},Z2={z2},X1={x1},X2={x2}",
                {"Z1": f[z1], "X1": s[x1], "Z2": f[z2], "X2": s[x2]},
            )


def logical_algebra(lat: RubyLattice, h: HamiltonianTerms) -> dict[str, IntegralOfMotion]:
    """
    Two logical qubits from string IOMs on the torus.

    Z1 and Z2 are the red and green strings on the shortest horizontal cycle;
    X1 and X2 are the green and red strings on the shortest vertical cycle.
    If that choice fails the remaining colour combinations and the diagonal
    cycle are tried before giving up.
    """
    return _solve_logicals(lat, h)[0]


def _solve_logicals(lat: RubyLattice, h: HamiltonianTerms):
    colex = contract_triangles(lat)
    cycles = {"horizontal": find_cycle(colex, (1, 0)), "vertical": find_cycle(colex, (0, 1))}
    try:
        cycles["diagonal"] = find_cycle(colex, (1, 1))
    except LatticeError:
        pass
    strings = {name: string_ioms(lat, h, path) for name, path in cycles.items()}

    pairs = [("horizontal", "vertical")]
    if "diagonal" in strings:
        pairs += [("horizontal", "diagonal"), ("diagonal", "vertical")]
    for first, second in pairs:
        for choice, chosen in _assignments(strings[first], strings[second]):
            relations = logical_relations({k: v.op for k, v in chosen.items()})
            if _holds(relations) and not any(anticommuting_terms(h, v.op) for v in chosen.values()):
                if choice != "designated" or first != "horizontal" or second != "vertical":
                    logger.warning("designated logical choice failed; using %s on %s/%s", choice, first, second)
                logger.info("logical algebra fixed by %s on %s/%s cycles", choice, first, second)
                used = {first: cycles[first], second: cycles[second]}
                return chosen, relations, f"{choice} ({first}/{second})", used
    raise InvariantViolation("no string IOM choice reproduces the two-qubit Pauli algebra")


def logical_report(lat: RubyLattice, h: HamiltonianTerms) -> LogicalReport:
    chosen, relations, choice, cycles = _solve_logicals(lat, h)
    return LogicalReport(
        operators={k: to_record(v, h) for k, v in chosen.items()},
        relations=relations,
        choice=choice,
        cycles={k: list(v) for k, v in cycles.items()},
    )


# ---------------------------------------------------------------------------
# Full report
# ---------------------------------------------------------------------------


def _verified(record: IomRecord) -> bool:
    return record.hermitian and record.squares_to_identity and record.commutes_with_hamiltonian


def iom_report(lat: RubyLattice, h: HamiltonianTerms) -> IomReport:
    """
    Every plaquette triple, the string triples on the two basic torus cycles
    and two example string-nets.

    The first net is the product of all A plaquettes (contractible, so it must
    lie in the plaquette span); the second crosses a red horizontal string
    with the vertical string it commutes with, branching where they meet.
    """
    plaquettes = all_plaquette_ioms(lat, h)
    plaquette_reports = [plaquette_report(lat, h, f) for f in range(len(plaquettes))]

    colex = contract_triangles(lat)
    string_reports = [string_report(lat, h, find_cycle(colex, w)) for w in ((1, 0), (0, 1))]

    chosen = logical_algebra(lat, h)
    nets = [
        build_stringnet(triple[0] for triple in plaquettes),
        build_stringnet([chosen["Z1"], chosen["X2"]]),
    ]
    net_reports = [stringnet_verify(lat, h, net, plaquettes) for net in nets]

    verified = (
        all(
            p.c_equals_minus_ab and p.independent == 2 and all(_verified(r) for r in (p.A, p.B, p.C))
            for p in plaquette_reports
        )
        and all(
            s.products_close and s.independent == 2 and all(_verified(r) for r in s.strings)
            for s in string_reports
        )
        and all(n.commutes_with_hamiltonian and _verified(n.net) for n in net_reports)
        and net_reports[0].in_plaquette_span
    )
    if not verified:
        logger.warning("IOM verification failed on %d qubits", h.n)
    return IomReport(
        n_qubits=h.n,
        n_terms=len(h),
        plaquettes=plaquette_reports,
        strings=string_reports,
        stringnets=net_reports,
        all_verified=verified,
    )
