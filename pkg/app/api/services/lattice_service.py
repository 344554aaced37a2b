"""Lattice service

The ruby lattice is grown from a honeycomb scaffold: every honeycomb vertex
becomes a blue triangle, every honeycomb edge a square and every honeycomb
face a ruby hexagon. Honeycomb cells (i, j) are grouped into supercells
spanned by T1 = (1, 1) and T2 = (-1, 2), so a supercell holds one hexagon of
each colour and the face 3-colouring wraps for every Lx, Ly.

Site numbering is row-major over supercells:

    vertex = ((X * Ly + Y) * 3 + s) * 2 + ab      (ab: 0 = A, 1 = B)
    site   = vertex * 3 + colour                  (colour of the site's hexagon)
"""

import functools
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Literal, Optional

import networkx as nx

from app.api.schemas.lattice import (
    EdgeRecord,
    FaceRecord,
    LatticeExport,
    SiteRecord,
    ValidationResponse,
    ViolationRecord,
)
from app.config import (
    COLORS,
    HEXAGONS_PER_CELL,
    SITES_PER_CELL,
    TRIANGLES_PER_CELL,
)
from app.errors import LatticeError

logger = logging.getLogger(__name__)

Color = Literal["red", "green", "blue"]
Offset = tuple[int, int]


def _neg(offset: Offset) -> Offset:
    return (-offset[0], -offset[1])


def _sub(a: Offset, b: Offset) -> Offset:
    return (a[0] - b[0], a[1] - b[1])


def _third(c1: int, c2: int) -> int:
    return 3 - c1 - c2


# ---------------------------------------------------------------------------
# Ruby lattice
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class RubySite:
    index: int
    cell: tuple[int, int]
    sublattice: int
    triangle: int
    color: int


@dataclass(frozen=True, slots=True)
class RubyEdge:
    """Undirected edge with a < b; ``offset`` is the winding picked up a -> b."""

    a: int
    b: int
    color: Color
    offset: Offset = (0, 0)

    def winding_from(self, site: int) -> Offset:
        if site == self.a:
            return self.offset
        if site == self.b:
            return _neg(self.offset)
        raise LatticeError(f"site {site} is not an endpoint of edge ({self.a}, {self.b})")

    def other(self, site: int) -> int:
        return self.b if site == self.a else self.a


@dataclass(frozen=True, slots=True)
class RubyFace:
    kind: Literal["triangle", "square", "hexagon"]
    sites: tuple[int, ...]
    edges: tuple[int, ...]
    color: Optional[Color] = None
    triangles: tuple[int, ...] = ()


@dataclass(frozen=True)
class RubyLattice:
    Lx: int
    Ly: int
    sites: tuple[RubySite, ...]
    edges: tuple[RubyEdge, ...]
    triangles: tuple[tuple[int, int, int], ...]
    faces: tuple[RubyFace, ...]

    @property
    def n_sites(self) -> int:
        return len(self.sites)

    @functools.cached_property
    def hexagons(self) -> tuple[int, ...]:
        return tuple(k for k, f in enumerate(self.faces) if f.kind == "hexagon")

    @functools.cached_property
    def squares(self) -> tuple[int, ...]:
        return tuple(k for k, f in enumerate(self.faces) if f.kind == "square")

    @functools.cached_property
    def hexagon_color(self) -> dict[int, Color]:
        return {k: self.faces[k].color for k in self.hexagons}

    @functools.cached_property
    def edge_lookup(self) -> dict[tuple[int, int], int]:
        return {(min(e.a, e.b), max(e.a, e.b)): k for k, e in enumerate(self.edges)}

    @functools.cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        table: list[list[int]] = [[] for _ in self.sites]
        for k, e in enumerate(self.edges):
            for s in (e.a, e.b):
                if 0 <= s < len(table):
                    table[s].append(k)
        return tuple(tuple(t) for t in table)

    @functools.cached_property
    def square_between(self) -> dict[tuple[int, int], int]:
        """(triangle, triangle) -> square face index."""
        table = {}
        for k in self.squares:
            u, w = self.faces[k].triangles
            table[(u, w)] = table[(w, u)] = k
        return table

    def edge_between(self, a: int, b: int) -> int:
        try:
            return self.edge_lookup[(min(a, b), max(a, b))]
        except KeyError:
            raise LatticeError(f"no edge between sites {a} and {b}") from None

    def site_at(self, triangle: int, color: int) -> int:
        return 3 * triangle + color


def _vertex_id(X: int, Y: int, s: int, ab: int, Ly: int) -> int:
    return ((X * Ly + Y) * 3 + s) * 2 + ab


def _locate(i: int, j: int, ab: int, Lx: int, Ly: int) -> tuple[int, Offset]:
    """Honeycomb vertex at base cell (i, j) -> (vertex id, supercell winding)."""
    s = (i - j) % 3
    Y = (j - i + s) // 3
    X = i - s + Y
    wx, X = divmod(X, Lx)
    wy, Y = divmod(Y, Ly)
    return _vertex_id(X, Y, s, ab, Ly), (wx, wy)


def _check_size(name: str, value: int) -> None:
    if not isinstance(value, int) or value < 1:
        raise LatticeError(f"{name} must be ≥ 1", {name: value})


def build_ruby(Lx: int, Ly: int) -> RubyLattice:
    """
    Build the ruby lattice on an Lx x Ly torus of 18-site supercells.

    Red/green convention: walking each hexagon in its stored cyclic order, a
    step from an A vertex to a B vertex is red and a step from B to A is green.
    Every site then has one red and one green edge, and every square one of each.
    """
    _check_size("Lx", Lx)
    _check_size("Ly", Ly)

    n_vertices = 2 * HEXAGONS_PER_CELL * Lx * Ly
    sites = []
    for v in range(n_vertices):
        cell, rest = divmod(v, 6)
        X, Y = divmod(cell, Ly)
        for c in range(3):
            sites.append(
                RubySite(
                    index=3 * v + c,
                    cell=(X, Y),
                    sublattice=rest * 3 + c,
                    triangle=v,
                    color=c,
                )
            )

    edges: list[RubyEdge] = []
    lookup: dict[tuple[int, int], int] = {}

    def add_edge(a: int, b: int, color: Color, offset: Offset = (0, 0)) -> int:
        if a > b:
            a, b, offset = b, a, _neg(offset)
        lookup[(a, b)] = len(edges)
        edges.append(RubyEdge(a, b, color, offset))
        return lookup[(a, b)]

    triangles = []
    triangle_faces = []
    for v in range(n_vertices):
        tri = (3 * v, 3 * v + 1, 3 * v + 2)
        ids = (
            add_edge(tri[0], tri[1], "blue"),
            add_edge(tri[1], tri[2], "blue"),
            add_edge(tri[0], tri[2], "blue"),
        )
        triangles.append(tri)
        triangle_faces.append(RubyFace("triangle", tri, ids, None, (v,)))

    hexagon_faces = []
    # honeycomb edge (A, B) -> {"red": (colour, edge), "green": (colour, edge)}
    links: dict[tuple[int, int], dict] = {}
    for X in range(Lx):
        for Y in range(Ly):
            for s in range(3):
                i, j = X - Y + s, X + 2 * Y
                ring = [
                    (i, j, 0),
                    (i, j, 1),
                    (i, j + 1, 0),
                    (i - 1, j + 1, 1),
                    (i - 1, j + 1, 0),
                    (i - 1, j, 1),
                ]
                located = [_locate(a, b, ab, Lx, Ly) for a, b, ab in ring]
                verts = tuple(v for v, _ in located)
                ring_edges = []
                for k in range(6):
                    (v0, w0), (v1, w1) = located[k], located[(k + 1) % 6]
                    from_a = ring[k][2] == 0
                    color: Color = "red" if from_a else "green"
                    idx = add_edge(3 * v0 + s, 3 * v1 + s, color, _sub(w1, w0))
                    ring_edges.append(idx)
                    key = (v0, v1) if from_a else (v1, v0)
                    links.setdefault(key, {})[color] = (s, idx)
                hexagon_faces.append(
                    RubyFace(
                        "hexagon",
                        tuple(3 * v + s for v in verts),
                        tuple(ring_edges),
                        COLORS[s],
                        verts,
                    )
                )

    square_faces = []
    for (u, w), sides in links.items():
        (c_red, red), (c_green, green) = sides["red"], sides["green"]
        corners = (3 * u + c_red, 3 * w + c_red, 3 * w + c_green, 3 * u + c_green)
        ids = (
            red,
            lookup[(min(corners[1], corners[2]), max(corners[1], corners[2]))],
            green,
            lookup[(min(corners[0], corners[3]), max(corners[0], corners[3]))],
        )
        square_faces.append(RubyFace("square", corners, ids, None, (u, w)))

    lattice = RubyLattice(
        Lx=Lx,
        Ly=Ly,
        sites=tuple(sites),
        edges=tuple(edges),
        triangles=tuple(triangles),
        faces=tuple(triangle_faces + square_faces + hexagon_faces),
    )
    logger.info(
        "built ruby lattice %dx%d: %d sites, %d edges, %d faces",
        Lx,
        Ly,
        lattice.n_sites,
        len(lattice.edges),
        len(lattice.faces),
    )
    return lattice


def export_lattice(lat: RubyLattice) -> LatticeExport:
    return LatticeExport(
        Lx=lat.Lx,
        Ly=lat.Ly,
        n_sites=lat.n_sites,
        sites=[
            SiteRecord(
                index=s.index,
                cell=s.cell,
                sublattice=s.sublattice,
                triangle=s.triangle,
                faces_color=COLORS[s.color],
            )
            for s in lat.sites
        ],
        edges=[EdgeRecord(a=e.a, b=e.b, color=e.color, offset=e.offset) for e in lat.edges],
        triangles=list(lat.triangles),
        faces=[
            FaceRecord(kind=f.kind, sites=list(f.sites), edges=list(f.edges), color=f.color)
            for f in lat.faces
        ],
    )


# ---------------------------------------------------------------------------
# Contracted 2-colex
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ColexEdge:
    u: int
    w: int
    color: Color
    offset: Offset
    square: int


@dataclass(frozen=True, slots=True)
class ColexFace:
    color: Color
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    hexagon: int


@dataclass(frozen=True)
class ContractionMap:
    """Tables for lifting colex objects back onto the ruby lattice."""

    site_to_vertex: tuple[int, ...]
    triangle_to_vertex: tuple[int, ...]
    square_to_edge: dict[int, int]
    hexagon_to_face: dict[int, int]


@dataclass(frozen=True)
class TwoColex:
    Lx: int
    Ly: int
    n_vertices: int
    edges: tuple[ColexEdge, ...]
    faces: tuple[ColexFace, ...]
    mapping: Optional[ContractionMap] = None
    genus: int = 1

    @functools.cached_property
    def graph(self) -> nx.MultiGraph:
        """Vertices and edges keyed by edge index; ``offset`` is the winding u -> w."""
        g = nx.MultiGraph()
        g.add_nodes_from(range(self.n_vertices))
        for k, e in enumerate(self.edges):
            g.add_edge(e.u, e.w, key=k, color=e.color, u=e.u, offset=e.offset)
        return g

    @functools.cached_property
    def edge_lookup(self) -> dict[tuple[int, int], int]:
        return {(min(e.u, e.w), max(e.u, e.w)): k for k, e in enumerate(self.edges)}

    def edge_between(self, u: int, w: int) -> int:
        try:
            return self.edge_lookup[(min(u, w), max(u, w))]
        except KeyError:
            raise LatticeError(f"vertices {u} and {w} are not adjacent") from None


def contract_triangles(lat: RubyLattice) -> TwoColex:
    """Shrink every blue triangle to a point, giving the honeycomb 2-colex."""
    report = validate(lat)
    if not report.valid:
        raise LatticeError(
            "cannot contract an invalid lattice",
            {"violations": [v.code for v in report.violations]},
        )

    edges = []
    square_to_edge = {}
    for k in lat.squares:
        face = lat.faces[k]
        u, w = face.triangles
        red = lat.edges[face.edges[0]]
        green = lat.edges[face.edges[2]]
        c_red = lat.sites[red.a].color
        c_green = lat.sites[green.a].color
        square_to_edge[k] = len(edges)
        edges.append(
            ColexEdge(
                u=u,
                w=w,
                color=COLORS[_third(c_red, c_green)],
                offset=red.winding_from(3 * u + c_red),
                square=k,
            )
        )
    lookup = {(min(e.u, e.w), max(e.u, e.w)): k for k, e in enumerate(edges)}

    faces = []
    hexagon_to_face = {}
    for k in lat.hexagons:
        face = lat.faces[k]
        verts = face.triangles
        ring = tuple(
            lookup[(min(a, b), max(a, b))]
            for a, b in zip(verts, verts[1:] + verts[:1])
        )
        hexagon_to_face[k] = len(faces)
        faces.append(ColexFace(color=face.color, vertices=verts, edges=ring, hexagon=k))

    n_vertices = len(lat.triangles)
    colex = TwoColex(
        Lx=lat.Lx,
        Ly=lat.Ly,
        n_vertices=n_vertices,
        edges=tuple(edges),
        faces=tuple(faces),
        mapping=ContractionMap(
            site_to_vertex=tuple(s.triangle for s in lat.sites),
            triangle_to_vertex=tuple(range(n_vertices)),
            square_to_edge=square_to_edge,
            hexagon_to_face=hexagon_to_face,
        ),
    )
    logger.info(
        "contracted %d triangles into a colex with %d edges and %d faces",
        n_vertices,
        len(edges),
        len(faces),
    )
    return colex


def close_walk(cycle) -> tuple[int, ...]:
    cycle = tuple(cycle)
    if len(cycle) > 1 and cycle[0] == cycle[-1]:
        cycle = cycle[:-1]
    return cycle


def cycle_edges(colex: TwoColex, cycle) -> tuple[int, ...]:
    """Colex edge indices along a closed walk, including the closing step."""
    cycle = close_walk(cycle)
    if len(cycle) < 3:
        raise LatticeError("a closed walk needs at least three vertices", {"cycle": list(cycle)})
    try:
        return tuple(
            colex.edge_between(a, b) for a, b in zip(cycle, cycle[1:] + cycle[:1])
        )
    except LatticeError as exc:
        raise LatticeError("walk is not closed in the colex", {"cycle": list(cycle)}) from exc


def cycle_winding(colex: TwoColex, cycle) -> Offset:
    cycle = close_walk(cycle)
    wx = wy = 0
    for k, a in zip(cycle_edges(colex, cycle), cycle):
        e = colex.edges[k]
        dx, dy = e.offset if a == e.u else _neg(e.offset)
        wx += dx
        wy += dy
    return wx, wy


def cycle_homology(colex: TwoColex, cycle) -> tuple[int, int]:
    """Z2 x Z2 homology class of a closed colex walk."""
    wx, wy = cycle_winding(colex, cycle)
    return wx % 2, wy % 2


def _cover(colex: TwoColex, bound: int) -> nx.Graph:
    """Lift of the colex to the cover with winding labels clipped to ``bound``."""
    cover = nx.Graph()
    span = range(-bound, bound + 1)
    for e in colex.edges:
        dx, dy = e.offset
        for wx in span:
            for wy in span:
                if abs(wx + dx) <= bound and abs(wy + dy) <= bound:
                    cover.add_edge((e.u, wx, wy), (e.w, wx + dx, wy + dy))
    return cover


def _shortest_from(cover: nx.Graph, start: int, winding: Offset) -> Optional[tuple[int, ...]]:
    try:
        lifted = nx.shortest_path(cover, (start, 0, 0), (start, winding[0], winding[1]))
    except (nx.NetworkXNoPath, nx.NodeNotFound):
        return None
    return tuple(v for v, _, _ in lifted[:-1])


def find_cycle(colex: TwoColex, winding: Offset, start: Optional[int] = None) -> tuple[int, ...]:
    """
    Shortest simple closed walk with the given winding numbers.

    The walk is searched in the universal cover. Without ``start`` every vertex
    is tried and the shortest simple result wins (lowest start on ties).
    """
    if winding == (0, 0):
        raise LatticeError("winding (0, 0) has no non-contractible representative")
    starts = range(colex.n_vertices) if start is None else [start]
    cover = _cover(colex, max(abs(winding[0]), abs(winding[1])) + 2)
    best = None
    for s in starts:
        walk = _shortest_from(cover, s, tuple(winding))
        if walk is None or len(set(walk)) != len(walk):
            continue
        if best is None or len(walk) < len(best):
            best = walk
    if best is None:
        raise LatticeError("no simple cycle with the requested winding", {"winding": list(winding)})
    logger.debug("cycle with winding %s: %s", winding, best)
    return best


# ---------------------------------------------------------------------------
# Square lattice
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SquarePlaquette:
    """Corners in the fixed order 1 bottom-left, 2 top-right, 3 bottom-right, 4 top-left."""

    origin: tuple[int, int]
    corners: tuple[int, int, int, int]
    color: Literal["black", "white"]


@dataclass(frozen=True)
class SquareLattice:
    L: int
    plaquettes: tuple[SquarePlaquette, ...]

    @property
    def n_sites(self) -> int:
        return self.L * self.L

    def site(self, x: int, y: int) -> int:
        return (y % self.L) * self.L + (x % self.L)


def build_square(L: int) -> SquareLattice:
    if not isinstance(L, int) or L < 2 or L % 2:
        raise LatticeError(f"L must be an even integer ≥ 2, got {L}", {"L": L})
    plaquettes = []
    for y in range(L):
        for x in range(L):
            def at(dx, dy):
                return ((y + dy) % L) * L + (x + dx) % L

            plaquettes.append(
                SquarePlaquette(
                    origin=(x, y),
                    corners=(at(0, 0), at(1, 1), at(1, 0), at(0, 1)),
                    color="black" if (x + y) % 2 == 0 else "white",
                )
            )
    logger.info("built square lattice L=%d", L)
    return SquareLattice(L=L, plaquettes=tuple(plaquettes))


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass
class _Report:
    lattice: str
    counts: dict[str, int] = field(default_factory=dict)
    euler: int = 0
    violations: list[ViolationRecord] = field(default_factory=list)

    def add(self, code: str, message: str, items=()) -> None:
        self.violations.append(ViolationRecord(code=code, message=message, items=list(items)))

    def done(self) -> ValidationResponse:
        if self.violations:
            logger.warning(
                "%s lattice has %d violation(s)", self.lattice, len(self.violations)
            )
        return ValidationResponse(
            lattice=self.lattice,
            counts=self.counts,
            euler_characteristic=self.euler,
            valid=not self.violations,
            violations=self.violations,
        )


@functools.singledispatch
def validate(lat) -> ValidationResponse:
    """Check every structural invariant and return all violations found."""
    raise LatticeError(f"cannot validate objects of type {type(lat).__name__}")


@validate.register
def _(lat: RubyLattice) -> ValidationResponse:
    report = _Report("ruby")
    n = lat.n_sites
    cells = lat.Lx * lat.Ly
    by_color = Counter(e.color for e in lat.edges)
    by_kind = Counter(f.kind for f in lat.faces)
    report.counts = {
        "sites": n,
        "edges": len(lat.edges),
        "blue": by_color["blue"],
        "red": by_color["red"],
        "green": by_color["green"],
        "triangles": by_kind["triangle"],
        "squares": by_kind["square"],
        "hexagons": by_kind["hexagon"],
    }
    expected = {
        "sites": SITES_PER_CELL * cells,
        "edges": 2 * SITES_PER_CELL * cells,
        "blue": SITES_PER_CELL * cells,
        "red": 9 * cells,
        "green": 9 * cells,
        "triangles": TRIANGLES_PER_CELL * cells,
        "squares": 9 * cells,
        "hexagons": HEXAGONS_PER_CELL * cells,
    }
    for key, want in expected.items():
        if report.counts[key] != want:
            report.add("count", f"expected {want} {key}, found {report.counts[key]}")

    seen = set()
    for k, e in enumerate(lat.edges):
        if not (0 <= e.a < n and 0 <= e.b < n) or e.a == e.b:
            report.add("edge-endpoint", f"edge {k} has invalid endpoints", [k])
            continue
        key = (min(e.a, e.b), max(e.a, e.b))
        if key in seen:
            report.add("duplicate-edge", f"edge {k} repeats sites {key}", [k])
        seen.add(key)

    for s, incident in enumerate(lat.incident):
        colors = Counter(lat.edges[k].color for k in incident)
        if colors != Counter({"blue": 2, "red": 1, "green": 1}):
            report.add(
                "degree-color",
                f"site {s} has {dict(colors)}, expected 2 blue, 1 red, 1 green",
                [s],
            )

    membership = Counter(s for tri in lat.triangles for s in tri)
    for s in range(n):
        if membership[s] != 1:
            report.add("triangle", f"site {s} lies in {membership[s]} triangles", [s])
    for t, tri in enumerate(lat.triangles):
        for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])):
            k = lat.edge_lookup.get((min(a, b), max(a, b)))
            if k is None or lat.edges[k].color != "blue":
                report.add("triangle", f"triangle {t} is missing blue edge ({a}, {b})", [t])

    for k, f in enumerate(lat.faces):
        members = set(f.sites)
        for e in f.edges:
            if not 0 <= e < len(lat.edges):
                report.add("face-boundary", f"face {k} lists unknown edge {e}", [k])
                continue
            edge = lat.edges[e]
            if edge.a not in members or edge.b not in members:
                report.add("face-boundary", f"face {k} lists foreign edge {e}", [k])

    hexagon_of_edge = {}
    for k in lat.hexagons:
        for e in lat.faces[k].edges:
            hexagon_of_edge[e] = k
    for k in lat.squares:
        f = lat.faces[k]
        sides = [hexagon_of_edge.get(e) for e in (f.edges[0], f.edges[2])]
        if None in sides:
            report.add("hexagon-coloring", f"square {k} does not touch two hexagons", [k])
        elif lat.faces[sides[0]].color == lat.faces[sides[1]].color:
            report.add("hexagon-coloring", f"hexagons {sides} share a colour across square {k}", sides)

    report.euler = n - len(lat.edges) + len(lat.faces)
    if report.euler != 0:
        report.add("euler", f"V - E + F = {report.euler}, expected 0 on the torus")
    return report.done()


@validate.register
def _(lat: TwoColex) -> ValidationResponse:
    report = _Report("colex")
    report.counts = {
        "vertices": lat.n_vertices,
        "edges": len(lat.edges),
        "faces": len(lat.faces),
    }
    for v, degree in lat.graph.degree():
        colors = Counter(color for _, _, color in lat.graph.edges(v, data="color"))
        if degree != 3:
            report.add("degree", f"vertex {v} has degree {degree}", [v])
        elif set(colors) != set(COLORS):
            report.add("edge-color", f"vertex {v} has edge colours {dict(colors)}", [v])

    faces_of_edge: dict[int, list[int]] = {}
    for k, f in enumerate(lat.faces):
        for e in f.edges:
            faces_of_edge.setdefault(e, []).append(k)
    for e, edge in enumerate(lat.edges):
        around = faces_of_edge.get(e, [])
        if len(around) != 2:
            report.add("face-coloring", f"edge {e} borders {len(around)} faces", [e])
            continue
        c1, c2 = (lat.faces[k].color for k in around)
        if c1 == c2:
            report.add("face-coloring", f"faces {around} share colour {c1}", around)
        elif edge.color in (c1, c2):
            report.add("edge-color", f"edge {e} has the colour of a face it borders", [e])

    report.euler = lat.n_vertices - len(lat.edges) + len(lat.faces)
    if report.euler != 2 - 2 * lat.genus:
        report.add("euler", f"V - E + F = {report.euler}")
    return report.done()


@validate.register
def _(lat: SquareLattice) -> ValidationResponse:
    report = _Report("square")
    L = lat.L
    report.counts = {"sites": lat.n_sites, "plaquettes": len(lat.plaquettes)}
    if len(lat.plaquettes) != L * L:
        report.add("count", f"expected {L * L} plaquettes, found {len(lat.plaquettes)}")
    color_at = {p.origin: p.color for p in lat.plaquettes}
    for k, p in enumerate(lat.plaquettes):
        if len(set(p.corners)) != 4:
            report.add("corners", f"plaquette {k} repeats a corner", [k])
        x, y = p.origin
        for nx, ny in (((x + 1) % L, y), (x, (y + 1) % L)):
            if color_at.get((nx, ny)) == p.color:
                report.add("coloring", f"plaquettes {p.origin} and {(nx, ny)} share a colour", [k])
    report.euler = lat.n_sites - 2 * lat.n_sites + len(lat.plaquettes)
    return report.done()
