"""Tests for GF(2) linear algebra."""

import numpy as np

from app.api.services import gf2


class TestRowReduce:
    """Tests for elimination and rank."""

    def test_rank_of_dependent_rows(self):
        m = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
        assert gf2.rank(m) == 2

    def test_transform_reproduces_reduced_form(self):
        rng = np.random.default_rng(0)
        m = rng.integers(0, 2, size=(7, 10))
        result = gf2.row_reduce(m)
        product = (result.transform.astype(int) @ m) % 2
        assert np.array_equal(product, result.matrix)
        assert result.rank == len(result.pivots)

    def test_empty(self):
        assert gf2.rank(np.zeros((0, 4))) == 0


class TestNullspace:
    """Tests for kernels and solves."""

    def test_nullspace_vectors_are_in_kernel(self):
        rng = np.random.default_rng(1)
        m = rng.integers(0, 2, size=(5, 9))
        basis = gf2.nullspace(m)
        assert basis.shape[0] == 9 - gf2.rank(m)
        assert not ((m @ basis.T.astype(int)) % 2).any()

    def test_nullspace_of_empty_matrix(self):
        assert np.array_equal(gf2.nullspace(np.zeros((0, 3)), 3), np.eye(3, dtype=np.uint8))

    def test_left_nullspace_gives_relations(self):
        m = np.array([[1, 0], [0, 1], [1, 1]])
        relations = gf2.left_nullspace(m)
        assert relations.tolist() == [[1, 1, 1]]

    def test_solve(self):
        m = np.array([[1, 0, 1], [0, 1, 1]])
        x = gf2.solve(m, [1, 1, 0])
        assert x.tolist() == [1, 1]
        assert gf2.solve(m, [0, 0, 1]) is None
