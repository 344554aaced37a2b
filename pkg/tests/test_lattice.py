"""Tests for lattice generation, contraction and validation."""

import dataclasses
from collections import Counter

import networkx as nx
import pytest

from app.api.services import lattice_service
from app.errors import LatticeError


class TestBuildRuby:
    """Tests for the ruby lattice builder."""

    def test_counts_one_cell(self, ruby11):
        report = lattice_service.validate(ruby11)
        assert report.valid, report.violations
        assert report.counts == {
            "sites": 18,
            "edges": 36,
            "blue": 18,
            "red": 9,
            "green": 9,
            "triangles": 6,
            "squares": 9,
            "hexagons": 3,
        }
        assert report.euler_characteristic == 0

    @pytest.mark.parametrize("lx,ly", [(2, 1), (1, 2), (2, 3)])
    def test_larger_tori_are_valid(self, lx, ly):
        lat = lattice_service.build_ruby(lx, ly)
        report = lattice_service.validate(lat)
        assert report.valid, report.violations
        assert lat.n_sites == 18 * lx * ly

    def test_every_site_has_degree_four(self, ruby11):
        for s in range(ruby11.n_sites):
            colors = Counter(ruby11.edges[k].color for k in ruby11.incident[s])
            assert colors == Counter({"blue": 2, "red": 1, "green": 1})

    def test_hexagons_take_every_colour(self, ruby11):
        assert sorted(ruby11.hexagon_color.values()) == ["blue", "green", "red"]

    def test_site_numbering(self, ruby11):
        for t, tri in enumerate(ruby11.triangles):
            assert tri == tuple(ruby11.site_at(t, c) for c in range(3))

    @pytest.mark.parametrize("lx,ly,name", [(0, 1, "Lx"), (1, 0, "Ly"), (-2, 1, "Lx")])
    def test_rejects_empty_torus(self, lx, ly, name):
        with pytest.raises(LatticeError, match=f"{name} must be ≥ 1"):
            lattice_service.build_ruby(lx, ly)

    def test_export(self, ruby11):
        export = lattice_service.export_lattice(ruby11)
        assert export.n_sites == 18
        assert len(export.edges) == 36
        assert len(export.faces) == 18
        assert {s.faces_color for s in export.sites} == {"red", "green", "blue"}


class TestValidateRuby:
    """Tests for violation reporting on damaged lattices."""

    def test_missing_edge_is_reported(self, ruby11):
        broken = dataclasses.replace(ruby11, edges=ruby11.edges[:-1])
        report = lattice_service.validate(broken)
        assert not report.valid
        codes = {v.code for v in report.violations}
        assert "count" in codes
        assert "degree-color" in codes

    def test_wrong_edge_colour_is_reported(self, ruby11):
        k = next(k for k, e in enumerate(ruby11.edges) if e.color == "red")
        edges = list(ruby11.edges)
        edges[k] = dataclasses.replace(edges[k], color="green")
        report = lattice_service.validate(dataclasses.replace(ruby11, edges=tuple(edges)))
        assert not report.valid
        flagged = [v for v in report.violations if v.code == "degree-color"]
        assert sorted(i for v in flagged for i in v.items) == sorted((edges[k].a, edges[k].b))

    def test_contraction_refuses_invalid_lattice(self, ruby11):
        broken = dataclasses.replace(ruby11, edges=ruby11.edges[:-1])
        with pytest.raises(LatticeError):
            lattice_service.contract_triangles(broken)

    def test_unknown_object(self):
        with pytest.raises(LatticeError):
            lattice_service.validate("ruby")


class TestColex:
    """Tests for the contracted honeycomb colex."""

    def test_three_face_torus(self, colex11):
        report = lattice_service.validate(colex11)
        assert report.valid, report.violations
        assert report.counts == {"vertices": 6, "edges": 9, "faces": 3}
        assert report.euler_characteristic == 0
        for face in colex11.faces:
            assert sorted(face.vertices) == list(range(6))

    def test_edge_colour_differs_from_neighbouring_faces(self, colex11):
        for face in colex11.faces:
            for e in face.edges:
                assert colex11.edges[e].color != face.color

    def test_larger_colex(self):
        colex = lattice_service.contract_triangles(lattice_service.build_ruby(2, 2))
        report = lattice_service.validate(colex)
        assert report.valid, report.violations
        assert colex.n_vertices == 24

    def test_bad_face_colouring_is_reported(self, colex11):
        faces = tuple(dataclasses.replace(f, color="red") for f in colex11.faces)
        report = lattice_service.validate(dataclasses.replace(colex11, faces=faces))
        assert "face-coloring" in {v.code for v in report.violations}


class TestCycles:
    """Tests for non-contractible cycles on the colex."""

    @pytest.mark.parametrize("winding", [(1, 0), (0, 1)])
    def test_find_cycle(self, colex11, winding):
        cycle = lattice_service.find_cycle(colex11, winding)
        assert len(set(cycle)) == len(cycle)
        assert lattice_service.cycle_winding(colex11, cycle) == winding
        assert lattice_service.cycle_homology(colex11, cycle) == (winding[0] % 2, winding[1] % 2)

    def test_cycle_on_larger_torus(self):
        colex = lattice_service.contract_triangles(lattice_service.build_ruby(2, 1))
        cycle = lattice_service.find_cycle(colex, (1, 0))
        assert lattice_service.cycle_winding(colex, cycle) == (1, 0)

    def test_colex_graph_is_cubic_and_simple(self, colex11):
        g = colex11.graph
        assert g.number_of_nodes() == 6
        assert nx.Graph(g).number_of_edges() == g.number_of_edges() == 9
        assert {d for _, d in g.degree()} == {3}
        assert nx.is_bipartite(g)

    def test_contractible_winding_rejected(self, colex11):
        with pytest.raises(LatticeError):
            lattice_service.find_cycle(colex11, (0, 0))

    def test_walk_must_be_closed(self, colex11):
        # even vertices are all on the same honeycomb sublattice
        with pytest.raises(LatticeError):
            lattice_service.cycle_edges(colex11, (0, 2, 4))


class TestDeterminism:
    """Builders return equal structures for equal parameters."""

    def test_ruby(self):
        assert lattice_service.build_ruby(2, 1) == lattice_service.build_ruby(2, 1)

    def test_colex(self):
        first = lattice_service.contract_triangles(lattice_service.build_ruby(2, 1))
        second = lattice_service.contract_triangles(lattice_service.build_ruby(2, 1))
        assert first == second
        assert lattice_service.find_cycle(first, (1, 0)) == lattice_service.find_cycle(second, (1, 0))

    def test_square(self):
        assert lattice_service.build_square(4) == lattice_service.build_square(4)

    def test_export(self):
        first = lattice_service.export_lattice(lattice_service.build_ruby(1, 2))
        second = lattice_service.export_lattice(lattice_service.build_ruby(1, 2))
        assert first.model_dump() == second.model_dump()


class TestSquare:
    """Tests for the square lattice of the toric code."""

    def test_build(self, square4):
        report = lattice_service.validate(square4)
        assert report.valid
        assert report.counts == {"sites": 16, "plaquettes": 16}

    def test_corner_order(self, square4):
        p = square4.plaquettes[0]
        assert p.corners == (square4.site(0, 0), square4.site(1, 1), square4.site(1, 0), square4.site(0, 1))

    @pytest.mark.parametrize("L", [0, 3, 5])
    def test_rejects_odd_or_small(self, L):
        with pytest.raises(LatticeError):
            lattice_service.build_square(L)

