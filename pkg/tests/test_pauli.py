"""Tests for the Pauli group service."""

import numpy as np
import pytest

from app.api.services import pauli_service
from app.api.services.pauli_service import PauliOperator
from app.errors import PauliError


def random_pauli(rng, n):
    return PauliOperator(
        n,
        int(rng.integers(0, 1 << n)),
        int(rng.integers(0, 1 << n)),
        int(rng.integers(0, 4)),
    )


class TestSingleSite:
    """Tests for single-qubit operators and their matrices."""

    def test_matrices(self):
        x = pauli_service.to_dense(pauli_service.single(1, 0, "x"))
        y = pauli_service.to_dense(pauli_service.single(1, 0, "y"))
        z = pauli_service.to_dense(pauli_service.single(1, 0, "z"))
        assert np.allclose(x, [[0, 1], [1, 0]])
        assert np.allclose(y, [[0, -1j], [1j, 0]])
        assert np.allclose(z, [[1, 0], [0, -1]])

    def test_xy_is_iz(self):
        x = pauli_service.single(1, 0, "x")
        y = pauli_service.single(1, 0, "y")
        z = pauli_service.single(1, 0, "z")
        assert pauli_service.multiply(x, y) == PauliOperator(1, 0, 1, 1)
        assert pauli_service.multiply(y, x) == PauliOperator(1, 0, 1, 3)
        assert pauli_service.multiply(x, y).same_pauli(z)

    def test_squares_are_identity(self):
        for kind in "xyz":
            p = pauli_service.single(3, 1, kind)
            assert pauli_service.multiply(p, p) == PauliOperator.identity(3)

    def test_site_out_of_range(self):
        with pytest.raises(PauliError):
            pauli_service.single(2, 2, "x")

    def test_bits_must_fit(self):
        with pytest.raises(PauliError):
            PauliOperator(2, 4, 0)


class TestGroupLaws:
    """Seeded randomized checks of the group structure."""

    def test_associativity_and_commutation(self):
        rng = np.random.default_rng(7)
        for _ in range(1000):
            p, q, r = (random_pauli(rng, 8) for _ in range(3))
            left = pauli_service.multiply(pauli_service.multiply(p, q), r)
            right = pauli_service.multiply(p, pauli_service.multiply(q, r))
            assert left == right

            pq = pauli_service.multiply(p, q)
            qp = pauli_service.multiply(q, p)
            if pauli_service.commutes(p, q):
                assert pq == qp
            else:
                assert pq == -qp

    def test_apply_composes(self):
        rng = np.random.default_rng(11)
        n = 5
        for _ in range(50):
            p, q = random_pauli(rng, n), random_pauli(rng, n)
            v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
            composed = pauli_service.apply_to_state(pauli_service.multiply(p, q), v)
            stepwise = pauli_service.apply_to_state(p, pauli_service.apply_to_state(q, v))
            assert np.allclose(composed, stepwise)

    def test_apply_matches_dense(self):
        rng = np.random.default_rng(3)
        p = random_pauli(rng, 3)
        v = rng.normal(size=8)
        assert np.allclose(pauli_service.apply_to_state(p, v), pauli_service.to_dense(p) @ v)


class TestHermitianForms:
    """Tests for canonical phases and sign extraction."""

    def test_from_sites_is_hermitian(self):
        p = pauli_service.from_sites(4, {0: "x", 1: "y", 3: "z"})
        assert p.is_hermitian
        assert p.phase_exp == 1
        assert not p.is_real
        assert pauli_service.to_text(p) == "X0 Y1 Z3"

    def test_xxxxxx_times_yyyyyy(self):
        ring = {s: "x" for s in range(6)}
        bx = pauli_service.from_sites(6, ring)
        by = pauli_service.from_sites(6, {s: "y" for s in ring})
        sign, canonical = pauli_service.multiply(bx, by).hermitian_parts()
        assert sign == -1
        assert canonical == pauli_service.from_sites(6, {s: "z" for s in ring})

    def test_non_hermitian_rejected(self):
        iz = PauliOperator(1, 0, 1, 1)
        assert not iz.is_hermitian
        with pytest.raises(PauliError):
            iz.hermitian_parts()

    def test_symplectic_vector(self):
        p = pauli_service.from_sites(3, {0: "x", 2: "y"})
        assert pauli_service.symplectic_vector(p).tolist() == [1, 0, 1, 0, 0, 1]
        assert pauli_service.from_symplectic(pauli_service.symplectic_vector(p), 3) == p

    def test_symplectic_vector_beyond_64_qubits(self):
        p = pauli_service.single(70, 69, "z")
        vector = pauli_service.symplectic_vector(p)
        assert vector.shape == (140,)
        assert vector[139] == 1 and vector.sum() == 1


class TestBasisAction:
    """Tests for the action on computational basis states."""

    def test_y_on_basis_states(self):
        y = pauli_service.single(1, 0, "y")
        assert pauli_service.apply(y, 0) == (1, 1j)
        assert pauli_service.apply(y, 1) == (0, -1j)

    def test_z_sign_on_excited_site(self):
        z = pauli_service.single(3, 2, "z")
        assert pauli_service.apply(z, 0b100) == (0b100, -1)
        assert pauli_service.apply(z, 0b011) == (0b011, 1)

    def test_index_out_of_range(self):
        with pytest.raises(PauliError):
            pauli_service.apply(pauli_service.single(2, 0, "x"), 4)

    def test_weight_support_identity(self):
        p = pauli_service.from_sites(5, {0: "x", 3: "y"})
        assert p.weight == 2
        assert p.support == (0, 3)
        assert not p.is_identity
        assert PauliOperator(3, 0, 0, 2).is_identity


class TestText:
    """Tests for the text form."""

    def test_round_trip_with_phases(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            p = random_pauli(rng, 6)
            assert pauli_service.parse(pauli_service.to_text(p), 6) == p

    def test_identity(self):
        assert pauli_service.to_text(PauliOperator.identity(3)) == "I"
        assert pauli_service.parse("-I", 3) == PauliOperator(3, 0, 0, 2)

    def test_non_strict_products(self):
        assert pauli_service.to_text(pauli_service.parse("X0 Z0", 1, strict=False)) == "-iY0"

    @pytest.mark.parametrize("text", ["X0 X0", "Q1", "X5", "", "*X0"])
    def test_malformed(self, text):
        with pytest.raises(PauliError):
            pauli_service.parse(text, 3)
