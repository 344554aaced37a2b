"""Tests for Hamiltonian construction."""

import itertools
import logging
import math

import pytest

from app.api.services import hamiltonian_service, pauli_service
from app.api.services.hamiltonian_service import Couplings, HamiltonianTerms
from app.api.services.lattice_service import ColexFace, TwoColex
from app.errors import ConfigError, StructureError


class TestTwoBody:
    """Tests for the ruby two-body model."""

    def test_one_term_per_link(self, ruby11, h11):
        assert len(h11) == 36
        assert h11.n == 18
        assert h11.is_real
        assert not h11.is_diagonal

    def test_interaction_follows_link_colour(self, ruby11):
        h = hamiltonian_service.build_two_body(ruby11, Couplings(0.5, 0.8, 1.0))
        letters = {"red": "X", "green": "Y", "blue": "Z"}
        coupling = {"red": 0.5, "green": 0.8, "blue": 1.0}
        for edge, (coef, op) in zip(ruby11.edges, h.terms):
            assert coef == coupling[edge.color]
            assert op.support == (edge.a, edge.b)
            assert op.kind_at(edge.a) == op.kind_at(edge.b) == letters[edge.color]

    def test_zero_couplings_are_kept_and_flagged(self, ruby11, caplog):
        with caplog.at_level(logging.WARNING):
            h = hamiltonian_service.build_two_body(ruby11, Couplings(0.0, 0.0, 1.0))
        assert len(h) == 36
        assert len(h.zero_terms) == 18
        assert h.is_diagonal
        assert "zero-coefficient" in caplog.text

    def test_non_finite_couplings_rejected(self):
        with pytest.raises(ConfigError):
            Couplings(1.0, math.nan, 1.0)
        with pytest.raises(ConfigError):
            Couplings(math.inf, 1.0, 1.0)

    def test_non_hermitian_terms_rejected(self):
        with pytest.raises(StructureError):
            HamiltonianTerms(n=1, terms=((1.0, pauli_service.PauliOperator(1, 0, 1, 1)),))

    def test_size_mismatch_rejected(self):
        with pytest.raises(StructureError):
            HamiltonianTerms(n=2, terms=((1.0, pauli_service.single(1, 0, "z")),))


class TestStabilizerModels:
    """Tests for the toric and color code Hamiltonians."""

    def test_toric_terms_commute(self, square4):
        h = hamiltonian_service.build_toric(square4)
        assert len(h) == 16
        assert all(coef == -1.0 for coef, _ in h.terms)
        for p, q in itertools.combinations(h.operators, 2):
            assert pauli_service.commutes(p, q)

    def test_toric_plaquette_letters(self, square4):
        op = hamiltonian_service.toric_plaquette(square4, 0)
        c1, c2, c3, c4 = square4.plaquettes[0].corners
        assert [op.kind_at(c) for c in (c1, c2, c3, c4)] == ["X", "X", "Z", "Z"]

    def test_color_code_terms_commute(self, colex11):
        h = hamiltonian_service.build_color_code(colex11)
        assert len(h) == 6
        assert h.n == 6
        for p, q in itertools.combinations(h.operators, 2):
            assert pauli_service.commutes(p, q)

    def test_odd_face_rejected(self):
        colex = TwoColex(
            Lx=1,
            Ly=1,
            n_vertices=5,
            edges=(),
            faces=(ColexFace(color="red", vertices=(0, 1, 2, 3, 4), edges=(), hexagon=0),),
        )
        with pytest.raises(StructureError):
            hamiltonian_service.face_stabilizers(colex, 0)


class TestEffective:
    """Tests for the strong-coupling effective model."""

    def test_coefficients(self):
        k = hamiltonian_service.effective_coefficients(Couplings(0.05, 0.05, 0.25))
        assert k.kz == pytest.approx(5.859375e-9, rel=1e-12)
        assert k.kx == pytest.approx(55489 / 13824 * 0.0025**3 * 0.05**3, rel=1e-12)
        assert k.ky == pytest.approx(k.kx, rel=1e-12)
        assert k.reading == "symmetric"
        assert k.literal["ky"] == pytest.approx(55489 / 13824 * 0.0025**3 * 0.25**3, rel=1e-12)

    def test_literal_reading(self):
        c = Couplings(0.05, 0.05, 0.25)
        k = hamiltonian_service.effective_coefficients(c, "literal")
        assert k.ky == k.literal["ky"]
        assert k.ky > k.kx

    def test_unknown_reading(self):
        with pytest.raises(ConfigError):
            hamiltonian_service.effective_coefficients(Couplings(), "other")

    def test_weak_coupling_warning(self, caplog):
        with caplog.at_level(logging.WARNING):
            hamiltonian_service.effective_coefficients(Couplings(1.0, 1.0, 1.0))
        assert "strong-coupling window" in caplog.text

    def test_bx_by_product_is_folded_into_coefficient(self, colex11):
        c = Couplings(0.05, 0.05, 0.25)
        k = hamiltonian_service.effective_coefficients(c)
        h = hamiltonian_service.build_effective(colex11, c)
        assert len(h) == 9
        zz = pauli_service.from_sites(6, {v: "z" for v in range(6)})
        coef, op = h.terms[2]
        assert op == zz
        assert coef == pytest.approx(k.kz)
        assert all(p.is_hermitian for p in h.operators)


class TestSerialization:
    """Tests for term-list export."""

    def test_jsonl_round_trip(self, h11):
        text = hamiltonian_service.to_jsonl(h11)
        assert len(text.splitlines()) == 36
        assert hamiltonian_service.from_jsonl(text, 18, model="two-body") == h11

    def test_summary(self, ruby11):
        h = hamiltonian_service.build_two_body(ruby11, Couplings(0.0, 1.0, 1.0))
        summary = hamiltonian_service.summarize(h)
        assert summary.n_terms == 36
        assert len(summary.zero_terms) == 9
        assert summary.is_real
